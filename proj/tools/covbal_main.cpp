// covbal command-line front end. Talks to the library only through covbal.h.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "covbal/covbal.h"

namespace {

constexpr int kExitBalanced = 0;
constexpr int kExitError = 2;
constexpr int kExitPositive = 10;
constexpr int kExitNegative = 11;

int report_failure(covbal_status status) {
    std::cerr << "covbal: " << covbal_status_name(status) << ": " << covbal_last_error() << '\n';
    return kExitError;
}

void print_warnings(const covbal_block* block) {
    for (size_t i = 0; i < covbal_block_warning_count(block); ++i) {
        std::cerr << "warning: " << covbal_block_warning(block, i) << '\n';
    }
}

int exit_for_sign(int sign) {
    if (sign > 0) return kExitPositive;
    if (sign < 0) return kExitNegative;
    return kExitBalanced;
}

struct AnalyzeArgs {
    std::string rules;
    std::string iface;
    std::string model;
    std::string format = "table";
    bool strict = false;
};

int run_analyze(const AnalyzeArgs& args) {
    covbal_block* block = nullptr;
    covbal_status status = covbal_block_analyze_files(args.rules.c_str(), args.iface.c_str(),
                                                      args.model.empty() ? nullptr : args.model.c_str(), &block);
    if (status != COVBAL_OK) return report_failure(status);

    if (args.format == "table" || args.format == "both") std::cout << covbal_block_text(block);
    if (args.format == "both") std::cout << '\n';
    if (args.format == "json" || args.format == "both") std::cout << covbal_block_json(block);
    print_warnings(block);

    int code = kExitBalanced;
    switch (covbal_block_verdict(block)) {
        case COVBAL_BALANCED:
            code = kExitBalanced;
            break;
        case COVBAL_POSITIVE_IMBALANCE:
            code = kExitPositive;
            break;
        case COVBAL_NEGATIVE_IMBALANCE:
            code = kExitNegative;
            break;
    }
    if (args.strict && covbal_block_warning_count(block) > 0) {
        std::cerr << "covbal: --strict: " << covbal_block_warning_count(block) << " warning(s) treated as errors\n";
        code = kExitError;
    }
    covbal_block_free(block);
    return code;
}

int run_rules(const std::string& rules, const std::string& iface) {
    covbal_block* block = nullptr;
    covbal_status status = covbal_block_analyze_files(rules.c_str(), iface.c_str(), nullptr, &block);
    if (status != COVBAL_OK) return report_failure(status);
    std::cout << covbal_block_table(block);
    print_warnings(block);
    covbal_block_free(block);
    return kExitBalanced;
}

int run_model(const std::string& model_path, const std::string& iface) {
    covbal_model* model = nullptr;
    covbal_status status = covbal_model_analyze_files(model_path.c_str(), iface.c_str(), &model);
    if (status != COVBAL_OK) return report_failure(status);
    std::cout << covbal_model_text(model);
    for (size_t i = 0; i < covbal_model_warning_count(model); ++i) {
        std::cerr << "warning: " << covbal_model_warning(model, i) << '\n';
    }
    covbal_model_free(model);
    return kExitBalanced;
}

int run_hier(const std::string& tree_path) {
    covbal_hierarchy* tree = nullptr;
    covbal_status status = covbal_hierarchy_load_file(tree_path.c_str(), &tree);
    if (status != COVBAL_OK) return report_failure(status);
    std::cout << covbal_hierarchy_text(tree);
    for (size_t i = 0; i < covbal_hierarchy_mismatch_count(tree); ++i) {
        std::cerr << "mismatch: " << covbal_hierarchy_mismatch(tree, i) << '\n';
    }
    int code = exit_for_sign(covbal_hierarchy_mismatch_sign(tree));
    covbal_hierarchy_free(tree);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage-balance analyzer for CTL rule sets"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", std::string(covbal_version()));

    AnalyzeArgs analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Full block analysis: rule table, punctures, balance verdict");
    analyze_cmd->add_option("--rules", analyze.rules, "Rule file")->required();
    analyze_cmd->add_option("--iface", analyze.iface, "Interface file")->required();
    analyze_cmd->add_option("--model", analyze.model, "SMV-subset model file");
    analyze_cmd->add_option("--format", analyze.format, "Output format")
        ->check(CLI::IsMember({"table", "json", "both"}));
    analyze_cmd->add_flag("--strict", analyze.strict, "Treat warnings as errors");

    std::string rules_file;
    std::string rules_iface;
    auto* rules_cmd = app.add_subcommand("rules", "Per-rule variance table only");
    rules_cmd->add_option("--rules", rules_file, "Rule file")->required();
    rules_cmd->add_option("--iface", rules_iface, "Interface file")->required();

    std::string model_file;
    std::string model_iface;
    auto* model_cmd = app.add_subcommand("model", "Puncture pressures of a model");
    model_cmd->add_option("--model", model_file, "SMV-subset model file")->required();
    model_cmd->add_option("--iface", model_iface, "Interface file")->required();

    std::string tree_file;
    auto* hier_cmd = app.add_subcommand("hier", "Hierarchical aggregation over units");
    hier_cmd->add_option("--tree", tree_file, "Hierarchy file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "covbal: " << e.what() << "\n\n" << app.help();
        return kExitError;
    }

    if (analyze_cmd->parsed()) return run_analyze(analyze);
    if (rules_cmd->parsed()) return run_rules(rules_file, rules_iface);
    if (model_cmd->parsed()) return run_model(model_file, model_iface);
    if (hier_cmd->parsed()) return run_hier(tree_file);
    return kExitError;
}
