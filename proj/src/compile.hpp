#pragma once

// Type-preserving cast insertion from the surface language into the cast
// calculus. Identity coercions are elided.

#include "surface.hpp"

namespace gifc {

struct CompileOut {
    CCPtr term;
    LType type;
};

CompileOut compile(const SPtr& m, const Ctx& ctx, Lbl g);

} // namespace gifc
