#include "nlm/model_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nlm/errors.hpp"

namespace nlm {

using nlohmann::json;

NLModel ModelFile::model() const {
    return NLModel(BaseProbability(space, p0), params.resolved());
}

namespace {

Rational parse_rational_field(const json& j, const std::string& what) {
    if (!j.is_string()) throw UsageError(what + " must be a rational string");
    return Rational::parse(j.get<std::string>());
}

ParamSpec parse_params(const json& j) {
    if (!j.is_object()) throw UsageError("\"params\" must be an object");
    ParamSpec spec;
    if (j.contains("kind")) {
        if (!j.at("kind").is_string()) throw UsageError("params.kind must be a string");
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "pmm") {
            spec.form = ParamSpec::Form::pmm;
            spec.parameter = parse_rational_field(j.at("delta"), "params.delta");
            if (spec.parameter.sign() <= 0)
                throw InvalidParameterError("PMM delta must be positive");
            spec.a = -spec.parameter;
            spec.b = Rational(1) + spec.parameter;
        } else if (kind == "epsilon") {
            spec.form = ParamSpec::Form::epsilon;
            spec.parameter = parse_rational_field(j.at("epsilon"), "params.epsilon");
            if (spec.parameter.sign() < 0 || spec.parameter >= Rational(1))
                throw InvalidParameterError("epsilon must lie in [0, 1)");
            spec.a = 0;
            spec.b = Rational(1) - spec.parameter;
        } else if (kind == "tvm") {
            spec.form = ParamSpec::Form::tvm;
            spec.parameter = parse_rational_field(j.at("a"), "params.a");
            if (spec.parameter >= Rational(0) || spec.parameter <= Rational(-1))
                throw InvalidParameterError("TVM parameter must lie in (-1, 0)");
            spec.a = spec.parameter;
            spec.b = 1;
        } else if (kind == "vacuous") {
            spec.form = ParamSpec::Form::vacuous;
            spec.a = -1;
            spec.b = 1;
        } else {
            throw UsageError("unknown params.kind: " + kind);
        }
    } else {
        spec.form = ParamSpec::Form::direct;
        if (!j.contains("a") || !j.contains("b"))
            throw UsageError("\"params\" needs either a/b or a kind");
        spec.a = parse_rational_field(j.at("a"), "params.a");
        spec.b = parse_rational_field(j.at("b"), "params.b");
    }
    return spec;
}

}  // namespace

ModelFile parse_model_file(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw UsageError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("model file must be a JSON object");

    ModelFile file;
    if (!j.contains("atoms") || !j.at("atoms").is_array())
        throw UsageError("model file needs an \"atoms\" array");
    std::vector<std::string> labels;
    for (const auto& atom : j.at("atoms")) {
        if (!atom.is_string()) throw UsageError("atom labels must be strings");
        labels.push_back(atom.get<std::string>());
    }
    file.space = SampleSpace::create(std::move(labels));

    if (!j.contains("p0") || !j.at("p0").is_array())
        throw UsageError("model file needs a \"p0\" array");
    for (const auto& mass : j.at("p0")) file.p0.push_back(parse_rational_field(mass, "p0 entry"));
    if (file.p0.size() != file.space->size())
        throw UsageError("\"p0\" needs one mass per atom");

    if (!j.contains("params")) throw UsageError("model file needs \"params\"");
    file.params = parse_params(j.at("params"));

    // Validates masses (sum exactly 1) and b > 0.
    (void)file.model();

    if (j.contains("events")) {
        if (!j.at("events").is_object()) throw UsageError("\"events\" must be an object");
        for (const auto& [name, value] : j.at("events").items()) {
            if (!value.is_array()) throw UsageError("event \"" + name + "\" must be an atom list");
            std::vector<std::string> atoms;
            for (const auto& atom : value) {
                if (!atom.is_string())
                    throw UsageError("event \"" + name + "\" must list atom labels");
                atoms.push_back(atom.get<std::string>());
            }
            file.events.emplace(name, Event::of_atoms(file.space, atoms));
        }
    }
    if (j.contains("partitions")) {
        if (!j.at("partitions").is_object()) throw UsageError("\"partitions\" must be an object");
        for (const auto& [name, value] : j.at("partitions").items()) {
            if (!value.is_array())
                throw UsageError("partition \"" + name + "\" must be a list of atom lists");
            std::vector<Event> blocks;
            for (const auto& block : value) {
                if (!block.is_array())
                    throw UsageError("partition \"" + name + "\" must be a list of atom lists");
                std::vector<std::string> atoms;
                for (const auto& atom : block) {
                    if (!atom.is_string())
                        throw UsageError("partition \"" + name + "\" must list atom labels");
                    atoms.push_back(atom.get<std::string>());
                }
                blocks.push_back(Event::of_atoms(file.space, atoms));
            }
            file.partitions.emplace(name, Partition(file.space, std::move(blocks)));
        }
    }
    return file;
}

ModelFile load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open model file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model_file(buffer.str());
}

std::string emit_model_file(const ModelFile& file) {
    json j;  // nlohmann::json keeps keys sorted, which is the canonical order
    j["atoms"] = file.space->atoms();
    json p0 = json::array();
    for (const auto& mass : file.p0) p0.push_back(mass.fraction_str());
    j["p0"] = p0;

    json params;
    switch (file.params.form) {
        case ParamSpec::Form::direct:
            params["a"] = file.params.a.fraction_str();
            params["b"] = file.params.b.fraction_str();
            break;
        case ParamSpec::Form::pmm:
            params["kind"] = "pmm";
            params["delta"] = file.params.parameter.fraction_str();
            break;
        case ParamSpec::Form::epsilon:
            params["kind"] = "epsilon";
            params["epsilon"] = file.params.parameter.fraction_str();
            break;
        case ParamSpec::Form::tvm:
            params["kind"] = "tvm";
            params["a"] = file.params.parameter.fraction_str();
            break;
        case ParamSpec::Form::vacuous:
            params["kind"] = "vacuous";
            break;
    }
    j["params"] = params;

    if (!file.events.empty()) {
        json events;
        for (const auto& [name, event] : file.events) events[name] = event.atom_labels();
        j["events"] = events;
    }
    if (!file.partitions.empty()) {
        json partitions;
        for (const auto& [name, part] : file.partitions) {
            json blocks = json::array();
            for (const auto& block : part.blocks()) blocks.push_back(block.atom_labels());
            partitions[name] = blocks;
        }
        j["partitions"] = partitions;
    }
    return j.dump(2) + "\n";
}

namespace {

struct ExprParser {
    const SpacePtr& space;
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw UsageError("event expression error at position " + std::to_string(pos) + ": " +
                         what);
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    Event parse_primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        if (eat('!')) return parse_primary().complement();
        if (eat('(')) {
            Event inner = parse_disjunction();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        const std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) fail(std::string("unexpected character '") + text[pos] + "'");
        const std::string name = text.substr(start, pos - start);
        if (name == "TRUE") return Event::full(space);
        if (name == "FALSE") return Event::empty(space);
        const int index = space->index_of(name);
        if (index < 0) {
            pos = start;
            fail("unknown atom: " + name);
        }
        return Event::single_atom(space, static_cast<std::size_t>(index));
    }

    Event parse_conjunction() {
        Event left = parse_primary();
        while (eat('&')) left = left.meet(parse_primary());
        return left;
    }

    Event parse_disjunction() {
        Event left = parse_conjunction();
        while (eat('|')) left = left.join(parse_conjunction());
        return left;
    }

    Event parse() {
        Event result = parse_disjunction();
        skip_ws();
        if (pos != text.size()) fail("trailing input");
        return result;
    }
};

}  // namespace

Event parse_event_expr(const SpacePtr& space, const std::string& text) {
    ExprParser parser{space, text};
    return parser.parse();
}

Event resolve_event(const ModelFile& file, const std::string& name_or_expr) {
    auto it = file.events.find(name_or_expr);
    if (it != file.events.end()) return it->second;
    return parse_event_expr(file.space, name_or_expr);
}

Partition resolve_partition(const ModelFile& file, const std::string& name_or_expr) {
    auto it = file.partitions.find(name_or_expr);
    if (it != file.partitions.end()) return it->second;
    // Inline partitions: block expressions separated by ';'.
    std::vector<Event> blocks;
    std::size_t start = 0;
    while (start <= name_or_expr.size()) {
        const std::size_t sep = name_or_expr.find(';', start);
        const std::string piece =
            name_or_expr.substr(start, sep == std::string::npos ? sep : sep - start);
        if (piece.find_first_not_of(" \t") != std::string::npos)
            blocks.push_back(parse_event_expr(file.space, piece));
        if (sep == std::string::npos) break;
        start = sep + 1;
    }
    if (blocks.empty())
        throw UsageError("unknown partition and empty inline spec: " + name_or_expr);
    return Partition(file.space, std::move(blocks));
}

}  // namespace nlm
