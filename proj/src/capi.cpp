#include "gifc/gifc.h"

#include "pipeline.hpp"

#include <new>

struct gifc_result {
    int status = 3;
    std::string output;
    std::string detail;
};

namespace {

gifc_result* wrap(gifc::pipeline::Outcome&& o) {
    auto* r = new (std::nothrow) gifc_result;
    if (!r) return nullptr;
    r->status = o.status;
    r->output = std::move(o.output);
    r->detail = std::move(o.detail);
    return r;
}

gifc_result* guarded(gifc::pipeline::Outcome (*fn)(void*), void* arg) {
    try {
        return wrap(fn(arg));
    } catch (const std::exception& e) {
        auto* r = new (std::nothrow) gifc_result;
        if (r) r->output = e.what();
        return r;
    } catch (...) {
        return new (std::nothrow) gifc_result;
    }
}

template <typename F> gifc_result* call(F&& f) {
    auto thunk = [](void* p) { return (*static_cast<F*>(p))(); };
    return guarded(thunk, &f);
}

std::string str_or_empty(const char* s) { return s ? std::string(s) : std::string(); }

} // namespace

extern "C" {

int gifc_result_status(const gifc_result* r) { return r ? r->status : 3; }

const char* gifc_result_output(const gifc_result* r) { return r ? r->output.c_str() : ""; }

const char* gifc_result_detail(const gifc_result* r) { return r ? r->detail.c_str() : ""; }

void gifc_result_free(gifc_result* r) { delete r; }

gifc_result* gifc_check(const char* source, int strict_pc) {
    return call([&] { return gifc::pipeline::check(str_or_empty(source), strict_pc != 0); });
}

gifc_result* gifc_compile(const char* source, int emit_cc, int strict_pc) {
    return call([&] {
        return gifc::pipeline::compile_source(str_or_empty(source), emit_cc != 0, strict_pc != 0);
    });
}

static std::optional<bool> parse_input(const char* input) {
    if (!input) return std::nullopt;
    std::string s(input);
    if (s == "true") return true;
    if (s == "false") return false;
    return std::nullopt;
}

gifc_result* gifc_run(const char* source, const char* input, long fuel, int trace, int preserve) {
    return call([&] {
        gifc::pipeline::RunParams p;
        p.input = parse_input(input);
        if (fuel > 0) p.fuel = fuel;
        p.trace = trace != 0;
        p.preserve = preserve != 0;
        return gifc::pipeline::run_source(str_or_empty(source), p);
    });
}

gifc_result* gifc_erase(const char* source) {
    return call([&] { return gifc::pipeline::erase_source(str_or_empty(source)); });
}

gifc_result* gifc_run_dyn(const char* source, const char* input, long fuel) {
    return call([&] {
        gifc::pipeline::RunParams p;
        p.input = parse_input(input);
        if (fuel > 0) p.fuel = fuel;
        return gifc::pipeline::run_dyn_source(str_or_empty(source), p);
    });
}

gifc_result* gifc_fuzz(const char* kind, unsigned long long seed, int count, int max_depth,
                       double star_bias, const char* out_path, const char* mutate) {
    return call([&] {
        gifc::GenConfig cfg;
        cfg.seed = seed;
        cfg.count = count;
        if (max_depth > 0) cfg.max_depth = max_depth;
        if (star_bias >= 0 && star_bias <= 1) cfg.star_bias = star_bias;
        return gifc::pipeline::fuzz(str_or_empty(kind), cfg, str_or_empty(out_path),
                                    str_or_empty(mutate));
    });
}

const char* gifc_version(void) { return "0.1.0"; }

} // extern "C"
