#include "covbal/covbal.h"

#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "covbal/errors.hpp"
#include "covbal/report.hpp"

struct covbal_block {
    covbal::AnalysisReport report;
    std::string table;
    std::string text;
    std::string json;
};

struct covbal_model {
    covbal::PunctureReport report;
    std::string text;
};

struct covbal_hierarchy {
    covbal::AggregationResult result;
    std::vector<std::string> mismatches;
    std::string text;
    int mismatch_sign = 0;
};

namespace {

thread_local std::string g_last_error;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Error raised while processing a named input; keeps the original category.
struct SourcedError {
    covbal_status status;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path + "'");
    return buf.str();
}

/// Runs `parse` and prefixes any failure with the source name.
template <class F>
auto from_source(const std::string& source, F&& parse) -> decltype(parse()) {
    try {
        return parse();
    } catch (const covbal::ParseError& e) {
        throw SourcedError{COVBAL_ERR_PARSE, source + ":" + e.what()};
    } catch (const covbal::ValidationError& e) {
        throw SourcedError{COVBAL_ERR_INVALID, source + ": " + e.what()};
    }
}

template <class F>
covbal_status guarded(F&& body) {
    g_last_error.clear();
    try {
        body();
        return COVBAL_OK;
    } catch (const SourcedError& e) {
        g_last_error = e.message;
        return e.status;
    } catch (const IoError& e) {
        g_last_error = e.what();
        return COVBAL_ERR_IO;
    } catch (const covbal::ParseError& e) {
        g_last_error = e.what();
        return COVBAL_ERR_PARSE;
    } catch (const covbal::ValidationError& e) {
        g_last_error = e.what();
        return COVBAL_ERR_INVALID;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return COVBAL_ERR_INVALID;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return COVBAL_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return COVBAL_ERR_INTERNAL;
    }
}

covbal_status null_argument(const char* what) {
    g_last_error = std::string(what) + " must not be NULL";
    return COVBAL_ERR_ARGUMENT;
}

std::unique_ptr<covbal_block> make_block(const std::string& rules_name, const std::string& rules_text,
                                         const std::string& iface_name, const std::string& iface_text,
                                         const std::string* model_name, const std::string* model_text) {
    auto iface = from_source(iface_name, [&] { return covbal::parse_interface(iface_text); });
    auto rules = from_source(rules_name, [&] { return covbal::parse_rules(rules_text); });
    std::optional<covbal::ModelAst> model;
    if (model_text != nullptr) model = from_source(*model_name, [&] { return covbal::parse_model(*model_text); });

    auto block = std::make_unique<covbal_block>();
    block->report = covbal::analyze_block(rules, iface, model ? &*model : nullptr);
    block->table = covbal::render_table(block->report.table, iface);
    block->text = covbal::render_text(block->report, iface);
    block->json = covbal::render_structured(block->report);
    return block;
}

std::unique_ptr<covbal_model> make_model(const std::string& model_name, const std::string& model_text,
                                         const std::string& iface_name, const std::string& iface_text) {
    auto iface = from_source(iface_name, [&] { return covbal::parse_interface(iface_text); });
    auto ast = from_source(model_name, [&] { return covbal::parse_model(model_text); });
    auto model = std::make_unique<covbal_model>();
    model->report = covbal::model_puncture_total(ast, iface);
    model->text = "Block: " + iface.block_name() + "\n" + covbal::render_puncture_report(model->report);
    return model;
}

std::unique_ptr<covbal_hierarchy> make_hierarchy(const std::string& tree_name, const std::string& tree_text,
                                                 const std::filesystem::path& base_dir) {
    auto root = from_source(tree_name, [&] { return covbal::parse_hierarchy(tree_text); });
    covbal::resolve_blocks(root, [&](const covbal::BlockFiles& files) {
        auto resolve = [&](const std::string& p) { return (base_dir / p).string(); };
        const std::string rules_path = resolve(files.rules);
        const std::string iface_path = resolve(files.iface);
        const std::string rules_text = read_file(rules_path);
        const std::string iface_text = read_file(iface_path);
        std::optional<std::string> model_path;
        std::optional<std::string> model_text;
        if (files.model) {
            model_path = resolve(*files.model);
            model_text = read_file(*model_path);
        }
        auto block = make_block(rules_path, rules_text, iface_path, iface_text,
                                model_path ? &*model_path : nullptr, model_text ? &*model_text : nullptr);
        return block->report.balance.residual;
    });

    auto tree = std::make_unique<covbal_hierarchy>();
    tree->result = from_source(tree_name, [&] { return covbal::aggregate_hierarchy(root); });
    for (const covbal::NodeValue* node : tree->result.mismatches()) {
        tree->mismatches.push_back(node->path + ": computed " + covbal::format_signed(node->value) + ", expected " +
                                   covbal::format_signed(*node->expected));
    }
    if (!tree->mismatches.empty()) {
        const covbal::NodeValue* first = tree->result.mismatches().front();
        tree->mismatch_sign = tree->result.root.sign();
        if (tree->mismatch_sign == 0) tree->mismatch_sign = (first->value - *first->expected).sign();
    }
    tree->text = covbal::render_hierarchy(tree->result);
    return tree;
}

template <class T>
const char* item(const std::vector<T>& items, std::size_t index) {
    return index < items.size() ? items[index].c_str() : nullptr;
}

}  // namespace

extern "C" {

const char* covbal_version(void) { return "0.1.0"; }

const char* covbal_status_name(covbal_status status) {
    switch (status) {
        case COVBAL_OK:
            return "ok";
        case COVBAL_ERR_IO:
            return "io_error";
        case COVBAL_ERR_PARSE:
            return "parse_error";
        case COVBAL_ERR_INVALID:
            return "invalid_input";
        case COVBAL_ERR_ARGUMENT:
            return "invalid_argument";
        case COVBAL_ERR_INTERNAL:
            return "internal_error";
    }
    return "unknown";
}

const char* covbal_last_error(void) { return g_last_error.c_str(); }

covbal_status covbal_block_analyze_files(const char* rules_path, const char* iface_path, const char* model_path,
                                         covbal_block** out) {
    if (out == nullptr) return null_argument("out");
    *out = nullptr;
    if (rules_path == nullptr) return null_argument("rules_path");
    if (iface_path == nullptr) return null_argument("iface_path");
    return guarded([&] {
        const std::string rules = read_file(rules_path);
        const std::string iface = read_file(iface_path);
        std::optional<std::string> model_name;
        std::optional<std::string> model;
        if (model_path != nullptr) {
            model_name = model_path;
            model = read_file(model_path);
        }
        *out = make_block(rules_path, rules, iface_path, iface, model_name ? &*model_name : nullptr,
                          model ? &*model : nullptr)
                   .release();
    });
}

covbal_status covbal_block_analyze_text(const char* rules_text, const char* iface_text, const char* model_text,
                                        covbal_block** out) {
    if (out == nullptr) return null_argument("out");
    *out = nullptr;
    if (rules_text == nullptr) return null_argument("rules_text");
    if (iface_text == nullptr) return null_argument("iface_text");
    return guarded([&] {
        const std::string model_name = "<model>";
        std::optional<std::string> model;
        if (model_text != nullptr) model = model_text;
        *out = make_block("<rules>", rules_text, "<iface>", iface_text, model ? &model_name : nullptr,
                          model ? &*model : nullptr)
                   .release();
    });
}

void covbal_block_free(covbal_block* block) { delete block; }

int64_t covbal_block_rule_total(const covbal_block* b) { return b ? b->report.balance.rule_total.value : 0; }
int64_t covbal_block_puncture_total(const covbal_block* b) { return b ? b->report.balance.puncture_total.value : 0; }
int64_t covbal_block_residual(const covbal_block* b) { return b ? b->report.balance.residual.value : 0; }

covbal_verdict covbal_block_verdict(const covbal_block* b) {
    if (b == nullptr) return COVBAL_BALANCED;
    switch (b->report.balance.verdict) {
        case covbal::Verdict::Balanced:
            return COVBAL_BALANCED;
        case covbal::Verdict::PositiveImbalance:
            return COVBAL_POSITIVE_IMBALANCE;
        case covbal::Verdict::NegativeImbalance:
            return COVBAL_NEGATIVE_IMBALANCE;
    }
    return COVBAL_BALANCED;
}

size_t covbal_block_rule_count(const covbal_block* b) { return b ? b->report.table.rows.size() : 0; }

const char* covbal_block_rule_label(const covbal_block* b, size_t index) {
    if (b == nullptr || index >= b->report.table.rows.size()) return nullptr;
    return b->report.table.rows[index].rule_label.c_str();
}

int64_t covbal_block_rule_delta(const covbal_block* b, size_t index) {
    if (b == nullptr || index >= b->report.table.rows.size()) return 0;
    return b->report.table.rows[index].delta.value;
}

size_t covbal_block_warning_count(const covbal_block* b) { return b ? b->report.warnings.size() : 0; }
const char* covbal_block_warning(const covbal_block* b, size_t i) { return b ? item(b->report.warnings, i) : nullptr; }
size_t covbal_block_uncovered_count(const covbal_block* b) { return b ? b->report.uncovered_signals.size() : 0; }
const char* covbal_block_uncovered(const covbal_block* b, size_t i) {
    return b ? item(b->report.uncovered_signals, i) : nullptr;
}
const char* covbal_block_table(const covbal_block* b) { return b ? b->table.c_str() : nullptr; }
const char* covbal_block_text(const covbal_block* b) { return b ? b->text.c_str() : nullptr; }
const char* covbal_block_json(const covbal_block* b) { return b ? b->json.c_str() : nullptr; }

covbal_status covbal_model_analyze_files(const char* model_path, const char* iface_path, covbal_model** out) {
    if (out == nullptr) return null_argument("out");
    *out = nullptr;
    if (model_path == nullptr) return null_argument("model_path");
    if (iface_path == nullptr) return null_argument("iface_path");
    return guarded([&] {
        const std::string model = read_file(model_path);
        const std::string iface = read_file(iface_path);
        *out = make_model(model_path, model, iface_path, iface).release();
    });
}

covbal_status covbal_model_analyze_text(const char* model_text, const char* iface_text, covbal_model** out) {
    if (out == nullptr) return null_argument("out");
    *out = nullptr;
    if (model_text == nullptr) return null_argument("model_text");
    if (iface_text == nullptr) return null_argument("iface_text");
    return guarded([&] { *out = make_model("<model>", model_text, "<iface>", iface_text).release(); });
}

void covbal_model_free(covbal_model* model) { delete model; }

int64_t covbal_model_total(const covbal_model* m) { return m ? m->report.total.value : 0; }
size_t covbal_model_puncture_count(const covbal_model* m) { return m ? m->report.punctures.size() : 0; }

const char* covbal_model_puncture_name(const covbal_model* m, size_t index) {
    if (m == nullptr || index >= m->report.punctures.size()) return nullptr;
    return m->report.punctures[index].name.c_str();
}

int64_t covbal_model_puncture_pressure(const covbal_model* m, size_t index) {
    if (m == nullptr || index >= m->report.punctures.size()) return 0;
    return m->report.punctures[index].pressure.value;
}

size_t covbal_model_warning_count(const covbal_model* m) { return m ? m->report.warnings.size() : 0; }
const char* covbal_model_warning(const covbal_model* m, size_t i) { return m ? item(m->report.warnings, i) : nullptr; }
const char* covbal_model_text(const covbal_model* m) { return m ? m->text.c_str() : nullptr; }

covbal_status covbal_hierarchy_load_file(const char* tree_path, covbal_hierarchy** out) {
    if (out == nullptr) return null_argument("out");
    *out = nullptr;
    if (tree_path == nullptr) return null_argument("tree_path");
    return guarded([&] {
        const std::string text = read_file(tree_path);
        *out = make_hierarchy(tree_path, text, std::filesystem::path(tree_path).parent_path()).release();
    });
}

covbal_status covbal_hierarchy_load_text(const char* tree_text, const char* base_dir, covbal_hierarchy** out) {
    if (out == nullptr) return null_argument("out");
    *out = nullptr;
    if (tree_text == nullptr) return null_argument("tree_text");
    return guarded([&] {
        std::filesystem::path base = base_dir != nullptr ? std::filesystem::path(base_dir) : std::filesystem::path();
        *out = make_hierarchy("<tree>", tree_text, base).release();
    });
}

void covbal_hierarchy_free(covbal_hierarchy* tree) { delete tree; }

int64_t covbal_hierarchy_root(const covbal_hierarchy* t) { return t ? t->result.root.value : 0; }
size_t covbal_hierarchy_node_count(const covbal_hierarchy* t) { return t ? t->result.nodes.size() : 0; }

const char* covbal_hierarchy_node_path(const covbal_hierarchy* t, size_t index) {
    if (t == nullptr || index >= t->result.nodes.size()) return nullptr;
    return t->result.nodes[index].path.c_str();
}

int64_t covbal_hierarchy_node_value(const covbal_hierarchy* t, size_t index) {
    if (t == nullptr || index >= t->result.nodes.size()) return 0;
    return t->result.nodes[index].value.value;
}

size_t covbal_hierarchy_mismatch_count(const covbal_hierarchy* t) { return t ? t->mismatches.size() : 0; }
const char* covbal_hierarchy_mismatch(const covbal_hierarchy* t, size_t i) {
    return t ? item(t->mismatches, i) : nullptr;
}
int covbal_hierarchy_mismatch_sign(const covbal_hierarchy* t) { return t ? t->mismatch_sign : 0; }
const char* covbal_hierarchy_text(const covbal_hierarchy* t) { return t ? t->text.c_str() : nullptr; }

}  // extern "C"
