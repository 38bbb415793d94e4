#include "cc.hpp"

namespace gifc {

std::string to_string(ConstK k) {
    switch (k) {
    case ConstK::Unit: return "unit";
    case ConstK::True: return "true";
    case ConstK::False: return "false";
    }
    return "?";
}

bool value_eq(const Value& a, const Value& b) {
    if (a.wrap.has_value() != b.wrap.has_value()) return false;
    if (a.wrap && !(*a.wrap == *b.wrap)) return false;
    if (a.raw.v.index() != b.raw.v.index()) return false;
    if (a.raw.is_const())
        return std::get<RawValue::ConstV>(a.raw.v).k == std::get<RawValue::ConstV>(b.raw.v).k;
    if (a.raw.is_addr()) {
        const auto& x = std::get<RawValue::AddrV>(a.raw.v);
        const auto& y = std::get<RawValue::AddrV>(b.raw.v);
        return x.region == y.region && x.idx == y.idx;
    }
    const auto& x = std::get<RawValue::LamV>(a.raw.v);
    const auto& y = std::get<RawValue::LamV>(b.raw.v);
    return x.x == y.x && to_string(x.body) == to_string(y.body);
}

static std::optional<RawValue> term_as_raw_value(const CCPtr& t) {
    if (auto c = t->as<Const>()) return RawValue{RawValue::ConstV{c->k}};
    if (auto a = t->as<AddrT>()) return RawValue{RawValue::AddrV{a->region, a->idx}};
    if (auto l = t->as<Lam>()) return RawValue{RawValue::LamV{l->x, l->body}};
    return std::nullopt;
}

std::optional<Value> term_as_value(const CCPtr& t) {
    if (auto rv = term_as_raw_value(t)) return Value{*rv, std::nullopt};
    if (auto c = t->as<Cast>()) {
        auto rv = term_as_raw_value(c->e);
        if (rv && irreducible(c->c)) return Value{*rv, c->c};
    }
    return std::nullopt;
}

CCPtr term_from_value(const Value& v) {
    CCPtr raw;
    if (v.raw.is_const()) raw = mk_cc(Const{std::get<RawValue::ConstV>(v.raw.v).k});
    else if (v.raw.is_addr()) {
        const auto& a = std::get<RawValue::AddrV>(v.raw.v);
        raw = mk_cc(AddrT{a.region, a.idx});
    } else {
        const auto& l = std::get<RawValue::LamV>(v.raw.v);
        raw = mk_cc(Lam{l.x, l.body});
    }
    if (!v.wrap) return raw;
    return mk_cc(Cast{raw, *v.wrap});
}

CCPtr subst(const CCPtr& term, const std::string& name, const CCPtr& replacement) {
    const CCTerm& t = *term;
    if (auto n = t.as<Var>()) return n->name == name ? replacement : term;
    if (t.is<Const>() || t.is<AddrT>() || t.is<BlameT>()) return term;
    if (auto n = t.as<Lam>()) {
        if (n->x == name) return term;
        return mk_cc(Lam{n->x, subst(n->body, name, replacement)});
    }
    if (auto n = t.as<App>())
        return mk_cc(App{subst(n->fun, name, replacement), subst(n->arg, name, replacement),
                         n->dom, n->cod, n->l});
    if (auto n = t.as<AppStar>())
        return mk_cc(AppStar{subst(n->fun, name, replacement), subst(n->arg, name, replacement),
                             n->dom, n->cod_raw});
    if (auto n = t.as<If>())
        return mk_cc(If{subst(n->cond, name, replacement), n->ty, n->l,
                        subst(n->thn, name, replacement), subst(n->els, name, replacement)});
    if (auto n = t.as<IfStar>())
        return mk_cc(IfStar{subst(n->cond, name, replacement), n->ty_raw,
                            subst(n->thn, name, replacement), subst(n->els, name, replacement)});
    if (auto n = t.as<Let>()) {
        CCPtr bound = subst(n->bound, name, replacement);
        CCPtr body = n->x == name ? n->body : subst(n->body, name, replacement);
        return mk_cc(Let{n->x, bound, n->ty, body});
    }
    if (auto n = t.as<RefT>()) return mk_cc(RefT{n->l, subst(n->init, name, replacement), n->cell});
    if (auto n = t.as<RefQ>())
        return mk_cc(RefQ{n->p, n->l, subst(n->init, name, replacement), n->cell});
    if (auto n = t.as<Deref>()) return mk_cc(Deref{subst(n->e, name, replacement), n->ty, n->l});
    if (auto n = t.as<DerefStar>())
        return mk_cc(DerefStar{subst(n->e, name, replacement), n->ty_raw});
    if (auto n = t.as<Assign>())
        return mk_cc(Assign{subst(n->lhs, name, replacement), subst(n->rhs, name, replacement),
                            n->ty_raw, n->lhat, n->l});
    if (auto n = t.as<AssignQ>())
        return mk_cc(AssignQ{n->p, subst(n->lhs, name, replacement),
                             subst(n->rhs, name, replacement), n->ty_raw, n->ghat});
    if (auto n = t.as<Prot>())
        return mk_cc(Prot{n->pc, n->l, subst(n->body, name, replacement), n->ty});
    if (auto n = t.as<Cast>()) return mk_cc(Cast{subst(n->e, name, replacement), n->c});
    throw ContractError("subst: unhandled term");
}

HeapTyping HeapTyping::of(const Heap& h) {
    HeapTyping s;
    for (const auto& c : h.low) s.low.push_back(c.ty);
    for (const auto& c : h.high) s.high.push_back(c.ty);
    return s;
}

bool HeapTyping::extends(const HeapTyping& prev) const {
    if (low.size() < prev.low.size() || high.size() < prev.high.size()) return false;
    for (size_t i = 0; i < prev.low.size(); ++i)
        if (low[i] != prev.low[i]) return false;
    for (size_t i = 0; i < prev.high.size(); ++i)
        if (high[i] != prev.high[i]) return false;
    return true;
}

std::string to_string(const CCPtr& t) { return to_string(*t); }

std::string to_string(const CCTerm& t) {
    if (auto n = t.as<Var>()) return n->name;
    if (auto n = t.as<Const>()) return "$" + to_string(n->k);
    if (auto n = t.as<AddrT>())
        return "(addr " + to_string(n->region) + " " + std::to_string(n->idx) + ")";
    if (auto n = t.as<Lam>()) return "(lam " + n->x + ". " + to_string(n->body) + ")";
    if (auto n = t.as<App>())
        return "(app " + to_string(n->fun) + " " + to_string(n->arg) + " " + to_string(n->dom) +
               " " + to_string(n->cod) + " " + to_string(n->l) + ")";
    if (auto n = t.as<AppStar>())
        return "(app* " + to_string(n->fun) + " " + to_string(n->arg) + " " + to_string(n->dom) +
               " " + to_string(n->cod_raw) + ")";
    if (auto n = t.as<If>())
        return "(if " + to_string(n->cond) + " " + to_string(n->ty) + " " + to_string(n->l) + " " +
               to_string(n->thn) + " " + to_string(n->els) + ")";
    if (auto n = t.as<IfStar>())
        return "(if* " + to_string(n->cond) + " " + to_string(n->ty_raw) + " " +
               to_string(n->thn) + " " + to_string(n->els) + ")";
    if (auto n = t.as<Let>())
        return "(let " + n->x + " = " + to_string(n->bound) + " : " + to_string(n->ty) + " in " +
               to_string(n->body) + ")";
    if (auto n = t.as<RefT>())
        return "(ref " + to_string(n->l) + " " + to_string(n->init) + ")";
    if (auto n = t.as<RefQ>())
        return "(ref?" + n->p + " " + to_string(n->l) + " " + to_string(n->init) + ")";
    if (auto n = t.as<Deref>())
        return "(! " + to_string(n->e) + " " + to_string(n->ty) + " " + to_string(n->l) + ")";
    if (auto n = t.as<DerefStar>())
        return "(!* " + to_string(n->e) + " " + to_string(n->ty_raw) + ")";
    if (auto n = t.as<Assign>())
        return "(assign " + to_string(n->lhs) + " " + to_string(n->rhs) + " " +
               to_string(n->ty_raw) + " " + to_string(n->lhat) + " " + to_string(n->l) + ")";
    if (auto n = t.as<AssignQ>())
        return "(assign?" + n->p + " " + to_string(n->lhs) + " " + to_string(n->rhs) + " " +
               to_string(n->ty_raw) + " " + to_string(n->ghat) + ")";
    if (auto n = t.as<Prot>())
        return "(prot " + to_string(n->pc) + " " + to_string(n->l) + " " + to_string(n->body) +
               " " + to_string(n->ty) + ")";
    if (auto n = t.as<Cast>()) return "(cast " + to_string(n->e) + " " + to_string(n->c) + ")";
    if (auto n = t.as<BlameT>()) return "(blame " + n->p + ")";
    return "?";
}

static std::string render_raw(const RawValue& r, Lbl at) {
    std::string lbl = "@" + to_string(at);
    if (r.is_const()) return to_string(std::get<RawValue::ConstV>(r.v).k) + lbl;
    if (r.is_addr()) {
        const auto& a = std::get<RawValue::AddrV>(r.v);
        return "addr(" + to_string(a.region) + "," + std::to_string(a.idx) + ")" + lbl;
    }
    return "<closure>" + lbl;
}

std::string render_value(const Value& v, const LType& at) {
    if (!v.wrap) return render_raw(v.raw, at.label);
    auto t = seq_type(v.wrap->seq);
    Lbl src = t ? t->first : at.label;
    return render_raw(v.raw, src) + to_string(*v.wrap);
}

} // namespace gifc
