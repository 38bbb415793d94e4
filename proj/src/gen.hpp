#pragma once

// Type-directed random program generation and annotation erosion.

#include "surface.hpp"

#include <map>
#include <random>

namespace gifc {

struct GenConfig {
    uint64_t seed = 1;
    int count = 100;
    int max_depth = 6;
    bool heap_ops = true;
    double star_bias = 0.4;
};

class Gen {
  public:
    Gen(const GenConfig& cfg, uint64_t salt);

    // A random goal type a generated program will check at.
    LType gen_goal();
    // A well-typed term at exactly `goal` under ctx and ambient pc g;
    // nullptr when the goal was given up on after retries.
    SPtr gen_typed(const LType& goal, const Ctx& ctx, Lbl g, int depth);
    // Whole program against base_ctx() and a low ambient pc, with blame
    // labels renumbered; retries internally.
    SPtr gen_program(const LType& goal);

  private:
    GenConfig cfg_;
    std::mt19937_64 rng_;
    int fresh_ = 0;

    size_t pick(size_t n);
    bool chance(double p);
    Lbl random_label(bool allow_star = true);
    LType gen_type(int depth, bool allow_star = true);
    SPtr leaf(const LType& goal, const Ctx& ctx, Lbl g);
    std::pair<Lbl, Lbl> split_label(Lbl goal);
};

// Count of surface constructs, for generator coverage reporting.
std::map<std::string, int> construct_histogram(const SPtr& m);

// Erodable sites: specific labels inside type annotations (lambda parameter
// and ascription types, including nested and pc labels, and the lambda's own
// pc). Runtime value labels are never sites.
size_t erode_site_count(const SPtr& m);

// Replace the site-th label with *; the result is related to the input by
// surface precision. Out-of-range selectors are a defect.
SPtr erode(const SPtr& m, size_t site);

} // namespace gifc
