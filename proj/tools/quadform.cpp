// quadform: command-line front end for the normal-form library.
//
//   quadform reduce-linear SYSTEM [-o OUT]
//   quadform normal-form SYSTEM... [--form auto|type1|type2] [-o OUT | --output-dir DIR] [--jobs N]
//   quadform verify SYSTEM TRANSFORM EXPECTED
//   quadform random --n N --kind continuous|discrete [--seed S] [--density D] [-o OUT]
//
// Exit codes: 0 ok, 1 verify mismatch, 2 not controllable, 3 parse/validation/argument
// error, 4 --form type1/type2 on a discrete system, 5 certification failure.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quadform/io.hpp"
#include "quadform/quadform.hpp"
#include "quadform/random.hpp"

namespace {

namespace fs = std::filesystem;
using quadform::io::json;

enum ExitCode : int {
    kOk = 0,
    kMismatch = 1,
    kNotControllable = 2,
    kBadInput = 3,
    kFormNotAvailable = 4,
    kCertification = 5,
};

struct CommandError {
    int code;
    std::string message;
};

std::mutex stderr_mutex;

void diagnose(const std::string& msg) {
    std::lock_guard lock(stderr_mutex);
    std::cerr << "quadform: " << msg << '\n';
}

std::size_t max_dimension() {
    const char* env = std::getenv("QUADFORM_MAX_N");
    if (!env || !*env) return 16;
    try {
        std::size_t pos = 0;
        const unsigned long value = std::stoul(env, &pos);
        if (pos != std::string(env).size() || value == 0) throw std::invalid_argument("bad");
        return value;
    } catch (const std::exception&) {
        throw CommandError{kBadInput, "QUADFORM_MAX_N must be a positive integer"};
    }
}

void emit(const json& doc, const std::string& output) {
    const std::string text = quadform::io::dump(doc);
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    if (!out || !(out << text)) throw CommandError{kBadInput, "cannot write " + output};
}

// Runs `body`, mapping library exceptions onto exit codes.
template <typename F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const CommandError& e) {
        diagnose(e.message);
        return e.code;
    } catch (const quadform::not_controllable& e) {
        diagnose(e.what());
        return kNotControllable;
    } catch (const quadform::certification_failure& e) {
        diagnose(std::string("certification failed: ") + e.what());
        return kCertification;
    } catch (const quadform::parse_error& e) {
        diagnose(e.what());
        return kBadInput;
    } catch (const quadform::validation_error& e) {
        diagnose(e.what());
        return kBadInput;
    } catch (const quadform::error& e) {
        diagnose(e.what());
        return kBadInput;
    } catch (const std::exception& e) {
        diagnose(e.what());
        return kBadInput;
    }
}

quadform::QuadraticSystem load_system(const std::string& path, bool symmetrize) {
    quadform::io::ParseOptions opts;
    opts.symmetrize = symmetrize;
    opts.max_n = max_dimension();
    try {
        return quadform::io::system_from_json(quadform::io::read_json_file(path), opts);
    } catch (const quadform::error& e) {
        throw CommandError{kBadInput, path + ": " + e.what()};
    }
}

// ---------------------------------------------------------------------------

int run_reduce_linear(const std::string& input, const std::string& output, bool symmetrize) {
    return guarded([&] {
        const auto sys = load_system(input, symmetrize);
        const auto reduction = quadform::reduce_linear(sys);
        json doc;
        doc["format_version"] = quadform::io::format_version;
        doc["system"] = quadform::io::system_to_json(reduction.system);
        doc["linear_transform"] = quadform::io::linear_transform_to_json(reduction.transform);
        emit(doc, output);
        return kOk;
    });
}

int normal_form_one(const std::string& input, const std::string& output, const std::string& form, bool symmetrize) {
    return guarded([&] {
        const auto sys = load_system(input, symmetrize);
        if (!sys.has_brunovsky_linear_part())
            throw CommandError{kBadInput, input + ": linear part is not in Brunovsky form; run reduce-linear first"};

        std::optional<quadform::NormalFormResult> result;
        if (sys.kind() == quadform::Kind::Discrete) {
            if (form != "auto")
                throw CommandError{kFormNotAvailable,
                                   input + ": discrete systems have a single normal form; use --form auto"};
            result = quadform::brunovsky_disc(sys);
        } else {
            const auto which = form == "type1" ? quadform::ContinuousForm::TypeI : quadform::ContinuousForm::TypeII;
            result = quadform::brunovsky_cont(sys, which);
        }

        // independent re-derivation before anything is written
        const auto check = quadform::substitute_and_truncate(sys, result->transform);
        if (const auto diffs = quadform::verify_equivalence(check, result->normal); !diffs.empty())
            throw CommandError{kCertification, input + ": substitution oracle disagrees with the normal form in " +
                                                   std::to_string(diffs.size()) + " coefficients"};
        emit(quadform::io::result_to_json(*result), output);
        return kOk;
    });
}

int run_normal_form(const std::vector<std::string>& inputs, const std::string& output, const std::string& output_dir,
                    const std::string& form, unsigned jobs, bool symmetrize) {
    if (inputs.size() == 1 && output_dir.empty()) return normal_form_one(inputs.front(), output, form, symmetrize);
    if (output_dir.empty() || !output.empty()) {
        diagnose("several inputs need --output-dir (and no -o)");
        return kBadInput;
    }
    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec) {
        diagnose("cannot create " + output_dir + ": " + ec.message());
        return kBadInput;
    }
    auto target = [&](const std::string& in) {
        return (fs::path(output_dir) / (fs::path(in).stem().string() + ".nf.json")).string();
    };

    int worst = kOk;
    std::size_t next = 0;
    const std::size_t width = std::max(1u, jobs);
    while (next < inputs.size()) {
        std::vector<std::future<int>> batch;
        for (std::size_t k = 0; k < width && next < inputs.size(); ++k, ++next) {
            const std::string in = inputs[next];
            batch.push_back(std::async(std::launch::async,
                                       [&, in] { return normal_form_one(in, target(in), form, symmetrize); }));
        }
        for (auto& f : batch) worst = std::max(worst, f.get());
    }
    return worst;
}

int run_verify(const std::string& system_path, const std::string& transform_path, const std::string& expected_path) {
    return guarded([&] {
        const auto sys = load_system(system_path, false);
        quadform::QuadraticTransform tf;
        std::optional<quadform::QuadraticSystem> expected;
        try {
            const json tdoc = quadform::io::read_json_file(transform_path);
            tf = quadform::io::is_result_document(tdoc) ? quadform::io::result_from_json(tdoc).transform
                                                        : quadform::io::transform_from_json(tdoc);
        } catch (const quadform::error& e) {
            throw CommandError{kBadInput, transform_path + ": " + e.what()};
        }
        try {
            const json edoc = quadform::io::read_json_file(expected_path);
            expected = quadform::io::is_result_document(edoc) ? quadform::io::result_from_json(edoc).normal
                                                              : quadform::io::system_from_json(edoc);
        } catch (const quadform::error& e) {
            throw CommandError{kBadInput, expected_path + ": " + e.what()};
        }
        if (expected->kind() != sys.kind() || expected->n() != sys.n())
            throw CommandError{kBadInput, "system and expected system differ in kind or dimension"};

        const auto transformed = quadform::substitute_and_truncate(sys, tf);
        const auto diffs = quadform::verify_equivalence(transformed, *expected);
        if (diffs.empty()) {
            std::cout << "equivalent\n";
            return kOk;
        }
        std::cout << diffs.size() << " coefficient(s) differ\n";
        for (const auto& d : diffs)
            std::cout << "  equation " << d.equation << ", " << d.monomial << ": transformed " << d.lhs
                      << ", expected " << d.rhs << '\n';
        return kMismatch;
    });
}

int run_random(std::size_t n, const std::string& kind, std::uint64_t seed, double density, const std::string& output) {
    return guarded([&] {
        if (n < 2 || n > 16 || n > max_dimension())
            throw CommandError{kBadInput, "--n must lie in [2, min(16, QUADFORM_MAX_N)]"};
        if (!(density >= 0.0 && density <= 1.0)) throw CommandError{kBadInput, "--density must lie in [0, 1]"};
        const auto k = kind == "continuous" ? quadform::Kind::Continuous : quadform::Kind::Discrete;
        emit(quadform::io::system_to_json(quadform::random_system(n, k, seed, density)), output);
        return kOk;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadratic Brunovsky normal forms with exact rational arithmetic"};
    app.require_subcommand(1);

    bool symmetrize = false;
    bool to_stdout = false;
    std::string output;

    auto add_output = [&](CLI::App* cmd) {
        auto* o = cmd->add_option("-o,--output", output, "Write the result to this file");
        auto* s = cmd->add_flag("--stdout", to_stdout, "Write the result to standard output (default)");
        o->excludes(s);
    };

    auto* reduce = app.add_subcommand("reduce-linear", "Bring the linear part of a system to Brunovsky form");
    std::string reduce_input;
    reduce->add_option("input", reduce_input, "System file")->required();
    reduce->add_flag("--symmetrize", symmetrize, "Replace each F_i by (F_i + F_i^T)/2 instead of rejecting it");
    add_output(reduce);

    auto* normal = app.add_subcommand("normal-form", "Compute the quadratic Brunovsky form and its transformation");
    std::vector<std::string> normal_inputs;
    std::string form = "auto";
    std::string output_dir;
    unsigned jobs = 1;
    normal->add_option("inputs", normal_inputs, "System file(s)")->required();
    normal->add_option("--form", form, "auto (type2 for continuous), type1 or type2")
        ->check(CLI::IsMember({"auto", "type1", "type2"}));
    normal->add_option("--output-dir", output_dir, "Directory for results when several inputs are given");
    normal->add_option("--jobs", jobs, "Number of inputs processed concurrently")->check(CLI::Range(1u, 256u));
    normal->add_flag("--symmetrize", symmetrize, "Replace each F_i by (F_i + F_i^T)/2 instead of rejecting it");
    add_output(normal);

    auto* verify = app.add_subcommand("verify", "Check that a transformation maps a system onto an expected system");
    std::string verify_system, verify_transform, verify_expected;
    verify->add_option("system", verify_system, "Original system file")->required();
    verify->add_option("transform", verify_transform, "Transform file (or normal-form result)")->required();
    verify->add_option("expected", verify_expected, "Expected system file (or normal-form result)")->required();

    auto* random = app.add_subcommand("random", "Generate a random system with Brunovsky linear part");
    std::size_t rand_n = 0;
    std::string rand_kind;
    std::uint64_t seed = 0;
    double density = 0.5;
    random->add_option("--n", rand_n, "Dimension (2..16)")->required();
    random->add_option("--kind", rand_kind, "continuous or discrete")
        ->required()
        ->check(CLI::IsMember({"continuous", "discrete"}));
    random->add_option("--seed", seed, "Seed; equal seeds give identical files");
    random->add_option("--density", density, "Probability that a coefficient is nonzero");
    add_output(random);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    if (reduce->parsed()) return run_reduce_linear(reduce_input, output, symmetrize);
    if (normal->parsed()) {
        if (normal_inputs.size() == 1 && output_dir.empty() && jobs > 1) jobs = 1;
        return run_normal_form(normal_inputs, output, output_dir, form, jobs, symmetrize);
    }
    if (verify->parsed()) return run_verify(verify_system, verify_transform, verify_expected);
    return run_random(rand_n, rand_kind, seed, density, output);
}
