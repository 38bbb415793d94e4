#pragma once

// Checking-mode type system of the cast calculus, used by compilation tests
// and by the machine's preservation mode.

#include "cc.hpp"

namespace gifc {

struct CCTypeError : std::runtime_error {
    explicit CCTypeError(const std::string& msg) : std::runtime_error(msg) {}
};

using CCCtx = std::vector<std::pair<std::string, LType>>;

// ctx; sigma; g; l |- m <= expected. Throws CCTypeError naming the premise.
// The universally quantified ambient security in binder rules is checked at
// its worst case, high.
void typecheck_cc(const CCPtr& m, const CCCtx& ctx, const HeapTyping& sigma, Lbl g, Lbl l,
                  const LType& expected);

// The label a (normal form) PC is typed at.
Lbl pc_type(const LabelExpr& pc);

// Pointwise heap check against its own typing.
void check_heap(const Heap& heap, const HeapTyping& sigma);

} // namespace gifc
