#include "surface.hpp"

#include <cctype>
#include <cstring>

namespace gifc {

namespace {

struct Token {
    enum class Kind {
        Ident, KwLam, KwIf, KwThen, KwElse, KwLet, KwIn, KwRef, KwUnit, KwTrue, KwFalse,
        KwUserInput, KwPublish, KwLow, KwHigh, KwTyUnit, KwTyBool, KwTyRef,
        At, Star, LParen, RParen, Colon, Dot, Bang, Walrus, Eq, ArrowOpen, ArrowClose,
        Arrow, LBrack, RBrack, End
    };
    Kind kind;
    std::string text;
    Span span;
};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    Span here{1, 1};

    explicit Lexer(const std::string& s) : src(s) {}

    void bump(char c) {
        if (c == '\n') {
            here.line++;
            here.col = 1;
        } else {
            here.col++;
        }
        pos++;
    }

    bool starts(const char* s) const { return src.compare(pos, strlen(s), s) == 0; }

    void skip_ws() {
        while (pos < src.size()) {
            char c = src[pos];
            if (isspace(static_cast<unsigned char>(c))) {
                bump(c);
            } else if (starts("--")) {
                while (pos < src.size() && src[pos] != '\n') bump(src[pos]);
            } else {
                break;
            }
        }
    }

    static bool ident_start(char c) { return isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    bool ident_cont(size_t p) const {
        char c = src[p];
        if (isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') return true;
        // '-' stays inside an identifier only when a letter follows (user-input).
        return c == '-' && p + 1 < src.size() && isalpha(static_cast<unsigned char>(src[p + 1]));
    }

    Token next() {
        skip_ws();
        Span sp = here;
        if (pos >= src.size()) return {Token::Kind::End, "", sp};
        char c = src[pos];
        auto sym = [&](Token::Kind k, const char* s) {
            for (const char* q = s; *q; ++q) bump(*q);
            return Token{k, s, sp};
        };
        if (starts(":=")) return sym(Token::Kind::Walrus, ":=");
        if (starts("-[")) return sym(Token::Kind::ArrowOpen, "-[");
        if (starts("]->")) return sym(Token::Kind::ArrowClose, "]->");
        if (starts("->")) return sym(Token::Kind::Arrow, "->");
        switch (c) {
        case '@': return sym(Token::Kind::At, "@");
        case '*': return sym(Token::Kind::Star, "*");
        case '(': return sym(Token::Kind::LParen, "(");
        case ')': return sym(Token::Kind::RParen, ")");
        case ':': return sym(Token::Kind::Colon, ":");
        case '.': return sym(Token::Kind::Dot, ".");
        case '!': return sym(Token::Kind::Bang, "!");
        case '=': return sym(Token::Kind::Eq, "=");
        case '[': return sym(Token::Kind::LBrack, "[");
        case ']': return sym(Token::Kind::RBrack, "]");
        default: break;
        }
        if (!ident_start(c)) throw ParseError(sp, std::string("unexpected character '") + c + "'");
        std::string text;
        while (pos < src.size() && ident_cont(pos)) {
            text += src[pos];
            bump(src[pos]);
        }
        static const std::pair<const char*, Token::Kind> keywords[] = {
            {"lam", Token::Kind::KwLam},       {"if", Token::Kind::KwIf},
            {"then", Token::Kind::KwThen},     {"else", Token::Kind::KwElse},
            {"let", Token::Kind::KwLet},       {"in", Token::Kind::KwIn},
            {"ref", Token::Kind::KwRef},       {"unit", Token::Kind::KwUnit},
            {"true", Token::Kind::KwTrue},     {"false", Token::Kind::KwFalse},
            {"user-input", Token::Kind::KwUserInput}, {"publish", Token::Kind::KwPublish},
            {"low", Token::Kind::KwLow},       {"high", Token::Kind::KwHigh},
            {"Unit", Token::Kind::KwTyUnit},   {"Bool", Token::Kind::KwTyBool},
            {"Ref", Token::Kind::KwTyRef},
        };
        for (const auto& [kw, kind] : keywords)
            if (text == kw) return {kind, text, sp};
        return {Token::Kind::Ident, text, sp};
    }
};

struct Parser {
    std::vector<Token> toks;
    size_t at = 0;
    ParseOptions opts;

    Parser(const std::string& src, ParseOptions o) : opts(o) {
        Lexer lex(src);
        for (;;) {
            Token t = lex.next();
            toks.push_back(t);
            if (t.kind == Token::Kind::End) break;
        }
    }

    const Token& peek(size_t ahead = 0) const {
        size_t i = at + ahead;
        return i < toks.size() ? toks[i] : toks.back();
    }
    Token take() { return toks[std::min(at++, toks.size() - 1)]; }
    bool accept(Token::Kind k) {
        if (peek().kind == k) {
            ++at;
            return true;
        }
        return false;
    }
    Token expect(Token::Kind k, const char* what) {
        if (peek().kind != k) throw ParseError(peek().span, std::string("expected ") + what);
        return take();
    }

    bool peek_label() const {
        auto k = peek().kind;
        return k == Token::Kind::KwLow || k == Token::Kind::KwHigh || k == Token::Kind::Star;
    }

    Lbl parse_label() {
        Token t = take();
        switch (t.kind) {
        case Token::Kind::KwLow: return Lbl::Low;
        case Token::Kind::KwHigh: return Lbl::High;
        case Token::Kind::Star: return Lbl::Star;
        default: throw ParseError(t.span, "expected a security label");
        }
    }

    Lbl parse_specific_label(const char* where) {
        Span sp = peek().span;
        Lbl l = parse_label();
        if (!is_specific(l))
            throw ParseError(sp, std::string("* is not allowed as a runtime label on ") + where);
        return l;
    }

    LType parse_ltype() {
        RawType raw = parse_rawty();
        expect(Token::Kind::At, "'@' and a label in a type");
        Lbl l = parse_label();
        return LType{raw, l};
    }

    RawType parse_rawty() {
        Token t = peek();
        if (accept(Token::Kind::KwTyUnit)) return unit_raw();
        if (accept(Token::Kind::KwTyBool)) return bool_raw();
        if (accept(Token::Kind::KwTyRef)) return make_ref(parse_ltype());
        if (accept(Token::Kind::LParen)) {
            RawType raw = parse_rawty();
            if (accept(Token::Kind::RParen)) return raw; // parenthesized raw type
            expect(Token::Kind::At, "'@' and a label in a type");
            LType dom{raw, parse_label()};
            Lbl pc = Lbl::Star;
            if (accept(Token::Kind::ArrowOpen)) {
                pc = parse_label();
                expect(Token::Kind::ArrowClose, "']->'");
            } else {
                expect(Token::Kind::Arrow, "'-[label]->' or '->'");
                if (opts.strict_pc)
                    throw ParseError(t.span, "arrow type without a pc label (strict-pc)");
            }
            LType cod = parse_ltype();
            expect(Token::Kind::RParen, "')' after function type");
            return make_fun(dom, pc, cod);
        }
        throw ParseError(t.span, "expected a type");
    }

    bool starts_atom() const {
        switch (peek().kind) {
        case Token::Kind::Ident:
        case Token::Kind::KwUnit:
        case Token::Kind::KwTrue:
        case Token::Kind::KwFalse:
        case Token::Kind::KwUserInput:
        case Token::Kind::LParen:
        case Token::Kind::Bang:
        case Token::Kind::KwPublish:
        case Token::Kind::KwRef:
            return true;
        default:
            return false;
        }
    }

    SPtr parse_term() {
        Token t = peek();
        switch (t.kind) {
        case Token::Kind::KwLam: return parse_lambda();
        case Token::Kind::KwIf: {
            take();
            SPtr cond = parse_term();
            expect(Token::Kind::KwThen, "'then'");
            SPtr thn = parse_term();
            expect(Token::Kind::KwElse, "'else'");
            SPtr els = parse_term();
            return mk_s(SIf{cond, thn, els, {}}, t.span);
        }
        case Token::Kind::KwLet: {
            take();
            Token name = expect(Token::Kind::Ident, "an identifier after 'let'");
            expect(Token::Kind::Eq, "'='");
            SPtr bound = parse_term();
            expect(Token::Kind::KwIn, "'in'");
            SPtr body = parse_term();
            return mk_s(SLet{name.text, bound, body}, t.span);
        }
        default: {
            SPtr lhs = parse_app();
            if (accept(Token::Kind::Walrus)) {
                SPtr rhs = parse_app();
                return mk_s(SAssign{lhs, rhs, {}}, t.span);
            }
            return lhs;
        }
        }
    }

    SPtr parse_lambda() {
        Token t = expect(Token::Kind::KwLam, "'lam'");
        Lbl pc = Lbl::Star;
        if (accept(Token::Kind::LBrack)) {
            pc = parse_label();
            expect(Token::Kind::RBrack, "']'");
        } else if (opts.strict_pc) {
            throw ParseError(t.span, "lambda without a pc label (strict-pc)");
        }
        expect(Token::Kind::LParen, "'('");
        Token name = expect(Token::Kind::Ident, "a parameter name");
        expect(Token::Kind::Colon, "':'");
        LType ann = parse_ltype();
        expect(Token::Kind::RParen, "')'");
        expect(Token::Kind::Dot, "'.'");
        SPtr body = parse_term();
        Lbl l = Lbl::Low;
        if (accept(Token::Kind::At)) l = parse_specific_label("a lambda");
        return mk_s(SLam{pc, name.text, ann, body, l}, t.span);
    }

    SPtr parse_app() {
        SPtr head = parse_prefix();
        while (starts_atom()) {
            SPtr arg = parse_prefix();
            head = mk_s(SApp{head, arg, {}}, head->span);
        }
        return head;
    }

    SPtr parse_prefix() {
        Token t = peek();
        if (accept(Token::Kind::Bang)) return mk_s(SDeref{parse_prefix(), {}}, t.span);
        if (accept(Token::Kind::KwPublish))
            return mk_s(SAnn{parse_prefix(), bool_ty(Lbl::Low), {}}, t.span);
        if (accept(Token::Kind::KwRef)) {
            Lbl l = Lbl::Low;
            if (peek_label()) l = parse_specific_label("a reference");
            return mk_s(SRef{l, parse_prefix(), {}}, t.span);
        }
        return parse_atom();
    }

    SPtr parse_atom() {
        Token t = take();
        switch (t.kind) {
        case Token::Kind::Ident: return mk_s(SVar{t.text}, t.span);
        case Token::Kind::KwUserInput: return mk_s(SVar{"input"}, t.span);
        case Token::Kind::KwUnit:
        case Token::Kind::KwTrue:
        case Token::Kind::KwFalse: {
            ConstK k = t.kind == Token::Kind::KwUnit ? ConstK::Unit
                       : t.kind == Token::Kind::KwTrue ? ConstK::True
                                                       : ConstK::False;
            Lbl l = Lbl::Low;
            if (accept(Token::Kind::At)) l = parse_specific_label("a constant");
            return mk_s(SConst{k, l}, t.span);
        }
        case Token::Kind::LParen: {
            SPtr inner = parse_term();
            // Ascriptions chain: (e : T1 : T2) casts through T1 then T2.
            while (accept(Token::Kind::Colon)) inner = mk_s(SAnn{inner, parse_ltype(), {}}, t.span);
            expect(Token::Kind::RParen, "')'");
            return inner;
        }
        default: throw ParseError(t.span, "expected a term, got '" + t.text + "'");
        }
    }
};

SPtr number_blames(const SPtr& m, int& counter) {
    auto fresh = [&counter]() { return "p" + std::to_string(++counter); };
    const STerm& t = *m;
    if (t.is<SVar>() || t.is<SConst>()) return m;
    if (auto n = t.as<SLam>())
        return mk_s(SLam{n->pc, n->x, n->ann, number_blames(n->body, counter), n->l}, t.span);
    if (auto n = t.as<SApp>()) {
        BlameLabel p = fresh();
        SPtr fun = number_blames(n->fun, counter);
        SPtr arg = number_blames(n->arg, counter);
        return mk_s(SApp{fun, arg, p}, t.span);
    }
    if (auto n = t.as<SIf>()) {
        BlameLabel p = fresh();
        SPtr c = number_blames(n->cond, counter);
        SPtr a = number_blames(n->thn, counter);
        SPtr b = number_blames(n->els, counter);
        return mk_s(SIf{c, a, b, p}, t.span);
    }
    if (auto n = t.as<SLet>()) {
        SPtr bound = number_blames(n->bound, counter);
        SPtr body = number_blames(n->body, counter);
        return mk_s(SLet{n->x, bound, body}, t.span);
    }
    if (auto n = t.as<SRef>()) {
        BlameLabel p = fresh();
        return mk_s(SRef{n->l, number_blames(n->init, counter), p}, t.span);
    }
    if (auto n = t.as<SDeref>()) {
        BlameLabel p = fresh();
        return mk_s(SDeref{number_blames(n->e, counter), p}, t.span);
    }
    if (auto n = t.as<SAssign>()) {
        BlameLabel p = fresh();
        SPtr lhs = number_blames(n->lhs, counter);
        SPtr rhs = number_blames(n->rhs, counter);
        return mk_s(SAssign{lhs, rhs, p}, t.span);
    }
    if (auto n = t.as<SAnn>()) {
        BlameLabel p = fresh();
        return mk_s(SAnn{number_blames(n->e, counter), n->ann, p}, t.span);
    }
    throw ContractError("number_blames: unhandled node");
}

} // namespace

SPtr parse(const std::string& source, const ParseOptions& opts) {
    Parser p(source, opts);
    SPtr term = p.parse_term();
    if (p.peek().kind != Token::Kind::End)
        throw ParseError(p.peek().span, "trailing input after program");
    int counter = 0;
    return number_blames(term, counter);
}

LType parse_ltype_text(const std::string& text) {
    Parser p(text, {});
    LType t = p.parse_ltype();
    if (p.peek().kind != Token::Kind::End)
        throw ParseError(p.peek().span, "trailing input after type");
    return t;
}

namespace {

// Rendering levels: 0 term, 1 application, 2 prefix operand, 3 atom.
std::string render_at(const SPtr& m, int level);

int level_of(const STerm& t) {
    if (t.is<SLam>() || t.is<SIf>() || t.is<SLet>() || t.is<SAssign>()) return 0;
    if (t.is<SApp>()) return 1;
    if (t.is<SRef>() || t.is<SDeref>()) return 2;
    return 3;
}

std::string render_node(const STerm& t) {
    if (auto n = t.as<SVar>()) return n->name;
    if (auto n = t.as<SConst>()) {
        std::string s = to_string(n->k);
        if (n->l != Lbl::Low) s += "@" + to_string(n->l);
        return s;
    }
    if (auto n = t.as<SLam>()) {
        std::string s = "lam ";
        if (is_specific(n->pc)) s += "[" + to_string(n->pc) + "] ";
        s += "(" + n->x + " : " + to_string(n->ann) + ") . ";
        if (n->l != Lbl::Low) return s + "(" + render_at(n->body, 0) + ") @ " + to_string(n->l);
        return s + render_at(n->body, 0);
    }
    if (auto n = t.as<SApp>()) return render_at(n->fun, 1) + " " + render_at(n->arg, 2);
    if (auto n = t.as<SIf>())
        return "if " + render_at(n->cond, 0) + " then " + render_at(n->thn, 0) + " else " +
               render_at(n->els, 0);
    if (auto n = t.as<SLet>())
        return "let " + n->x + " = " + render_at(n->bound, 0) + " in " + render_at(n->body, 0);
    if (auto n = t.as<SRef>()) return "ref " + to_string(n->l) + " " + render_at(n->init, 2);
    if (auto n = t.as<SDeref>()) return "! " + render_at(n->e, 2);
    if (auto n = t.as<SAssign>()) return render_at(n->lhs, 1) + " := " + render_at(n->rhs, 1);
    if (auto n = t.as<SAnn>()) return "(" + render_at(n->e, 0) + " : " + to_string(n->ann) + ")";
    return "?";
}

std::string render_at(const SPtr& m, int level) {
    std::string body = render_node(*m);
    if (level_of(*m) < level) return "(" + body + ")";
    return body;
}

} // namespace

std::string render(const SPtr& term) { return render_at(term, 0); }

} // namespace gifc
