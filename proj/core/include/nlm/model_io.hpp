#pragma once

#include <map>
#include <string>

#include "nlm/model.hpp"

namespace nlm {

/// How the distortion parameters were written in the model file; kept so
/// canonical emission round-trips byte for byte.
struct ParamSpec {
    enum class Form { direct, pmm, epsilon, tvm, vacuous };
    Form form = Form::direct;
    Rational a;          // resolved coefficients, whatever the form
    Rational b;
    Rational parameter;  // delta / epsilon / TVM a, for the submodel forms

    NLParameters resolved() const { return {a, b}; }
};

/// Parsed model file: atoms, base probability, distortion parameters, and
/// optional named events and partitions.
///
/// File format (JSON, UTF-8):
///   {
///     "atoms": ["w1", ...],
///     "p0": ["1/10", "0.25", ...],                 // rationals as strings
///     "params": {"a": "-1/5", "b": "11/10"}        // or {"kind": "pmm", "delta": "1/5"},
///                                                  // {"kind": "epsilon", "epsilon": "1/10"},
///                                                  // {"kind": "tvm", "a": "-1/4"},
///                                                  // {"kind": "vacuous"}
///     "events": {"Astar": ["w2", "w4", "w5"]},     // optional, atom-label lists
///     "partitions": {"B": [["w1","w2"], ["w3"]]}   // optional, lists of such lists
///   }
struct ModelFile {
    SpacePtr space;
    std::vector<Rational> p0;
    ParamSpec params;
    std::map<std::string, Event> events;
    std::map<std::string, Partition> partitions;

    NLModel model() const;
};

ModelFile parse_model_file(const std::string& json_text);
ModelFile load_model_file(const std::string& path);

/// Canonical serialization: sorted keys, two-space indent, rationals in
/// lowest terms. Emitted text reparses to an identical canonical form.
std::string emit_model_file(const ModelFile& file);

/// Event expressions: atoms are identifiers; "!" (complement), "&" (meet),
/// "|" (join), parentheses, and the TRUE/FALSE keywords; precedence
/// ! > & > |. Throws UsageError with the offending position.
Event parse_event_expr(const SpacePtr& space, const std::string& text);

/// Resolves a name declared in the model file, falling back to expression
/// parsing.
Event resolve_event(const ModelFile& file, const std::string& name_or_expr);
Partition resolve_partition(const ModelFile& file, const std::string& name_or_expr);

}  // namespace nlm
