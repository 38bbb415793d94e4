#pragma once

// The fully dynamic IFC language: erasure target of the cast calculus and
// the reference monitor for differential noninterference runs.

#include "cc_typecheck.hpp"

namespace gifc {

struct DTerm;
using DPtr = std::shared_ptr<const DTerm>;

struct DVar {
    std::string name;
};
struct DConst {
    ConstK k;
    Lbl l;
};
struct DAddr {
    int idx;
    Lbl region;
    Lbl l;
};
struct DLam {
    std::string x;
    DPtr body;
    Lbl l;
};
struct DApp {
    DPtr fun, arg;
};
struct DIf {
    DPtr cond, thn, els;
};
struct DRefQ {
    Lbl l;
    DPtr init;
};
struct DDeref {
    DPtr e;
};
struct DAssignQ {
    DPtr lhs, rhs;
};
struct DProt {
    Lbl l;
    DPtr body;
};

struct DTerm {
    std::variant<DVar, DConst, DAddr, DLam, DApp, DIf, DRefQ, DDeref, DAssignQ, DProt> v;

    template <typename T> const T* as() const { return std::get_if<T>(&v); }
    template <typename T> bool is() const { return std::holds_alternative<T>(v); }
};

template <typename T> DPtr mk_d(T node) { return std::make_shared<const DTerm>(DTerm{std::move(node)}); }

std::string to_string(const DPtr& t);

// Erasure: drops casts, converts static heap operations to checked ones, and
// labels raw values from their checked type.
DPtr erase(const CCPtr& m, const LType& at);

struct DynHeap {
    std::vector<DPtr> low, high; // cells hold values

    std::vector<DPtr>& region(Lbl l) { return l == Lbl::Low ? low : high; }
    size_t size() const { return low.size() + high.size(); }
};

struct DynOutcome {
    enum class Tag { Value, NSUError, Timeout, Stuck } tag;
    DPtr value;
    std::string site; // NSUError
    size_t steps = 0;
};

DynOutcome run_dyn(const DPtr& m, Lbl pc, long fuel = 100000);

// Simulation on final values (labels only for closures).
bool value_sim(const DPtr& dyn_value, const Value& v, const LType& at);

DPtr subst_dyn(const DPtr& term, const std::string& name, const DPtr& value);

} // namespace gifc
