#pragma once

// The programmer-facing language: AST, concrete syntax (parser + renderer),
// declarative typechecker, and term precision.

#include "cc.hpp"

namespace gifc {

struct Span {
    int line = 0;
    int col = 0;
};

struct STerm;
using SPtr = std::shared_ptr<const STerm>;

struct SVar {
    std::string name;
};
struct SConst {
    ConstK k;
    Lbl l = Lbl::Low;
};
struct SLam {
    Lbl pc = Lbl::Star;
    std::string x;
    LType ann;
    SPtr body;
    Lbl l = Lbl::Low;
};
struct SApp {
    SPtr fun, arg;
    BlameLabel blame;
};
struct SIf {
    SPtr cond, thn, els;
    BlameLabel blame;
};
struct SLet {
    std::string x;
    SPtr bound, body;
};
struct SRef {
    Lbl l = Lbl::Low;
    SPtr init;
    BlameLabel blame;
};
struct SDeref {
    SPtr e;
    BlameLabel blame;
};
struct SAssign {
    SPtr lhs, rhs;
    BlameLabel blame;
};
struct SAnn {
    SPtr e;
    LType ann;
    BlameLabel blame;
};

struct STerm {
    std::variant<SVar, SConst, SLam, SApp, SIf, SLet, SRef, SDeref, SAssign, SAnn> v;
    Span span;

    template <typename T> const T* as() const { return std::get_if<T>(&v); }
    template <typename T> bool is() const { return std::holds_alternative<T>(v); }
};

template <typename T> SPtr mk_s(T node, Span sp = {}) {
    return std::make_shared<const STerm>(STerm{std::move(node), sp});
}

struct ParseError : std::runtime_error {
    Span span;
    ParseError(Span sp, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(sp.line) + ":" +
                             std::to_string(sp.col) + ": " + msg),
          span(sp) {}
};

struct ParseOptions {
    bool strict_pc = false; // reject omitted pc labels on lambdas and arrows
};

// Parse a whole program. Blame labels are assigned p1, p2, ... in pre-order,
// making rendered casts and blame output stable.
SPtr parse(const std::string& source, const ParseOptions& opts = {});

// Type syntax, reusable for CLI output round-trips.
LType parse_ltype_text(const std::string& text);

std::string render(const SPtr& term);

struct TypeError : std::runtime_error {
    Span span;
    std::string rule;
    TypeError(Span sp, std::string rule_, const std::string& msg)
        : std::runtime_error("type error at " + std::to_string(sp.line) + ":" +
                             std::to_string(sp.col) + " [" + rule_ + "]: " + msg),
          span(sp),
          rule(std::move(rule_)) {}
};

using Ctx = std::vector<std::pair<std::string, LType>>;

// The distinguished free variable bound by `user-input`.
Ctx base_ctx();

// Declarative typing judgment: ctx; g |- m : A. Throws TypeError.
LType typecheck_surface(const SPtr& m, const Ctx& ctx, Lbl g);

// Term precision: identical shapes, annotations related by type precision,
// runtime labels equal.
bool surface_precision(const SPtr& m, const SPtr& m2);

} // namespace gifc
