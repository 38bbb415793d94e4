// Command-line front end; everything goes through the C API.

#include <gifc/gifc.h>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        std::exit(2);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int finish(gifc_result* r, bool detail_first = false) {
    if (!r) {
        std::cerr << "out of memory\n";
        return 3;
    }
    int status = gifc_result_status(r);
    std::string output = gifc_result_output(r);
    std::string detail = gifc_result_detail(r);
    std::ostream& sink = status == 2 || status == 3 ? std::cerr : std::cout;
    if (detail_first && !detail.empty()) sink << detail;
    if (!output.empty()) sink << output << "\n";
    gifc_result_free(r);
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gradual information-flow language toolchain"};
    app.require_subcommand(1);

    std::string file, input, out_path, mutate;
    bool emit_cc = false, trace = false, preserve = false, strict_pc = false;
    long fuel = 0;
    unsigned long long seed = 1;
    int count = 100, depth = 0;
    double star_bias = -1;

    auto* check = app.add_subcommand("check", "typecheck a program and print its type");
    check->add_option("file", file)->required();
    check->add_flag("--strict-pc", strict_pc, "reject omitted pc labels");

    auto* comp = app.add_subcommand("compile", "insert casts; print the type");
    comp->add_option("file", file)->required();
    comp->add_flag("--emit-cc", emit_cc, "print the cast-calculus term");
    comp->add_flag("--strict-pc", strict_pc);

    auto* runc = app.add_subcommand("run", "compile and evaluate");
    runc->add_option("file", file)->required();
    runc->add_option("--input", input, "bind user-input to true or false")
        ->check(CLI::IsMember({"true", "false"}));
    runc->add_option("--fuel", fuel, "step budget (default 100000)");
    runc->add_flag("--trace", trace, "print one line per machine step");
    runc->add_flag("--preserve", preserve, "re-verify typing after every step");
    runc->add_flag("--strict-pc", strict_pc);

    auto* er = app.add_subcommand("erase", "print the fully dynamic erasure");
    er->add_option("file", file)->required();

    auto* rd = app.add_subcommand("run-dyn", "evaluate the erasure under the dynamic monitor");
    rd->add_option("file", file)->required();
    rd->add_option("--input", input)->check(CLI::IsMember({"true", "false"}));
    rd->add_option("--fuel", fuel);

    auto* fz = app.add_subcommand("fuzz", "property harnesses: safety | ni | gg");
    std::string kind;
    fz->add_option("kind", kind)->required()->check(CLI::IsMember({"safety", "ni", "gg"}));
    fz->add_option("--seed", seed);
    fz->add_option("--count", count);
    fz->add_option("--depth", depth, "generator depth (default 6)");
    fz->add_option("--star-bias", star_bias, "probability of * per label site");
    fz->add_option("--out", out_path, "write a JSON summary here");
    fz->add_option("--mutate", mutate,
                   "break one rule on purpose: let-no-subst | prot-no-stamp | proj-always-blame");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const char* input_c = input.empty() ? nullptr : input.c_str();
    if (check->parsed()) return finish(gifc_check(read_file(file).c_str(), strict_pc));
    if (comp->parsed()) return finish(gifc_compile(read_file(file).c_str(), emit_cc, strict_pc));
    if (runc->parsed())
        return finish(gifc_run(read_file(file).c_str(), input_c, fuel, trace, preserve), true);
    if (er->parsed()) return finish(gifc_erase(read_file(file).c_str()));
    if (rd->parsed()) return finish(gifc_run_dyn(read_file(file).c_str(), input_c, fuel));
    if (fz->parsed())
        return finish(gifc_fuzz(kind.c_str(), seed, count, depth, star_bias,
                                out_path.empty() ? nullptr : out_path.c_str(),
                                mutate.empty() ? nullptr : mutate.c_str()));
    return 2;
}
