#include "nlm/cli_app.hpp"

#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlm/credal.hpp"
#include "nlm/dilation.hpp"
#include "nlm/errors.hpp"
#include "nlm/model_io.hpp"

namespace nlm::cli {

namespace {

using OrderedJson = nlohmann::ordered_json;

OrderedJson rational_json(const Rational& r) {
    return OrderedJson{{"frac", r.fraction_str()}, {"dec", r.decimal_str()}};
}

std::string fmt(const Rational& r) { return r.fraction_str() + " (" + r.decimal_str() + ")"; }

struct CommonArgs {
    std::string model_path;
    std::string format = "text";
    unsigned long seed = 0;
};

struct Context {
    CommonArgs common;
    ModelFile file;
    NLModel model;
    OrderedJson report;

    Context(CommonArgs args, ModelFile parsed)
        : common(std::move(args)), file(std::move(parsed)), model(file.model()) {}
};

OrderedJson model_summary(const NLModel& model) {
    const SubmodelTag tag = recognize_submodel(model);
    OrderedJson j;
    j["atoms"] = model.space()->atoms();
    j["family"] = to_string(model.family());
    j["submodel"] = to_string(tag.kind);
    if (tag.kind != SubmodelTag::Kind::generic && tag.kind != SubmodelTag::Kind::vacuous)
        j["submodel_parameter"] = rational_json(tag.parameter);
    j["a"] = rational_json(model.params().a);
    j["b"] = rational_json(model.params().b);
    j["c"] = rational_json(model.params().c());
    return j;
}

void print_model_summary(std::ostream& out, const NLModel& model) {
    const SubmodelTag tag = recognize_submodel(model);
    out << "model: family=" << to_string(model.family()) << " submodel=" << to_string(tag.kind)
        << " a=" << model.params().a.fraction_str() << " b=" << model.params().b.fraction_str()
        << " c=" << model.params().c().fraction_str() << "\n";
}

// Flattens report payload rows into CSV; non-tabular payloads fall back to
// key,value lines.
void render_csv(std::ostream& out, const OrderedJson& report) {
    const auto& result = report.at("result");
    if (result.is_object() && result.contains("rows") && result.at("rows").is_array() &&
        !result.at("rows").empty()) {
        const auto& rows = result.at("rows");
        std::vector<std::string> columns;
        for (const auto& [key, value] : rows.front().items()) {
            (void)value;
            columns.push_back(key);
        }
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "," : "") << columns[i];
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < columns.size(); ++i) {
                const auto& cell = row.at(columns[i]);
                std::string text;
                if (cell.is_object() && cell.contains("frac"))
                    text = cell.at("frac").get<std::string>();
                else if (cell.is_string())
                    text = cell.get<std::string>();
                else
                    text = cell.dump();
                out << (i ? "," : "") << text;
            }
            out << "\n";
        }
        return;
    }
    for (const auto& [key, value] : result.items()) {
        std::string text;
        if (value.is_object() && value.contains("frac"))
            text = value.at("frac").get<std::string>();
        else if (value.is_string())
            text = value.get<std::string>();
        else
            text = value.dump();
        out << key << "," << text << "\n";
    }
}

int finish(Context& ctx, std::ostream& out, const std::function<void(std::ostream&)>& text,
           int exit_code) {
    if (ctx.common.format == "json") {
        out << ctx.report.dump(2) << "\n";
    } else if (ctx.common.format == "csv") {
        render_csv(out, ctx.report);
    } else {
        text(out);
    }
    return exit_code;
}

OrderedJson block_finding_json(const BlockFinding& finding) {
    OrderedJson row;
    row["block"] = finding.block.to_string();
    row["lower"] = rational_json(finding.lower);
    row["upper"] = rational_json(finding.upper);
    row["lower_case"] = finding.lower_case;
    row["upper_case"] = finding.upper_case;
    row["extension_case"] = finding.extension_case;
    row["satisfied"] = finding.satisfied;
    return row;
}

OrderedJson dilation_report_json(const DilationReport& report) {
    OrderedJson j;
    j["verdict"] = to_string(report.verdict);
    j["mode"] = to_string(report.mode);
    j["lower_A"] = rational_json(report.lower_a);
    j["upper_A"] = rational_json(report.upper_a);
    j["assumptions"] = OrderedJson{{"A1", report.assumptions.a1},
                                   {"A2", report.assumptions.a2},
                                   {"A3", report.assumptions.a3}};
    OrderedJson rows = OrderedJson::array();
    for (const auto& finding : report.per_block) rows.push_back(block_finding_json(finding));
    j["rows"] = rows;
    return j;
}

void print_dilation_report(std::ostream& out, const DilationReport& report) {
    out << "A: lower=" << fmt(report.lower_a) << " upper=" << fmt(report.upper_a) << "\n";
    out << "assumptions: A1=" << (report.assumptions.a1 ? "yes" : "no")
        << " A2=" << (report.assumptions.a2 ? "yes" : "no")
        << " A3=" << (report.assumptions.a3 ? "yes" : "no") << "\n";
    for (const auto& finding : report.per_block) {
        out << "  block " << finding.block.to_string() << ": lower=" << fmt(finding.lower)
            << " upper=" << fmt(finding.upper);
        if (!finding.lower_case.empty() || !finding.upper_case.empty()) {
            out << " labels=" << (finding.lower_case.empty() ? "-" : finding.lower_case) << "+"
                << (finding.upper_case.empty() ? "-" : finding.upper_case);
        }
        out << " case=" << finding.extension_case
            << " satisfied=" << (finding.satisfied ? "yes" : "no") << "\n";
    }
    out << "verdict: " << to_string(report.verdict) << "\n";
}

int cmd_eval(Context& ctx, const std::string& event_expr, std::ostream& out) {
    const Event a = resolve_event(ctx.file, event_expr);
    const Rational lo = ctx.model.lower(a);
    const Rational hi = ctx.model.upper(a);
    OrderedJson result;
    result["event"] = a.to_string();
    result["lower"] = rational_json(lo);
    result["upper"] = rational_json(hi);
    ctx.report["result"] = result;
    return finish(ctx, out, [&](std::ostream& os) {
        print_model_summary(os, ctx.model);
        os << "event: " << a.to_string() << "\n";
        os << "lower: " << fmt(lo) << "\n";
        os << "upper: " << fmt(hi) << "\n";
    }, kExitOk);
}

int cmd_condition(Context& ctx, const std::string& given_expr, const std::string& method,
                  const std::string& emit, const std::string& rows_mode, std::ostream& out) {
    const Event given = resolve_event(ctx.file, given_expr);
    const bool regular = method == "regular";

    if (emit == "model") {
        const NLModel conditioned = condition_vbm(ctx.model, given);
        ModelFile emitted;
        emitted.space = conditioned.space();
        emitted.p0 = conditioned.p0().masses();
        emitted.params.form = ParamSpec::Form::direct;
        emitted.params.a = conditioned.params().a;
        emitted.params.b = conditioned.params().b;
        out << emit_model_file(emitted);
        return kExitOk;
    }

    OrderedJson result;
    result["given"] = given.to_string();
    result["method"] = regular ? "regular" : "natural";

    if (emit == "params") {
        const NLModel conditioned = condition_vbm(ctx.model, given);
        result["a_B"] = rational_json(conditioned.params().a);
        result["b_B"] = rational_json(conditioned.params().b);
        result["c_B"] = rational_json(conditioned.params().c());
        result["conditioned_atoms"] = conditioned.space()->atoms();
        OrderedJson p0 = OrderedJson::array();
        for (const auto& mass : conditioned.p0().masses()) p0.push_back(rational_json(mass));
        result["p0_given_B"] = p0;
        ctx.report["result"] = result;
        return finish(ctx, out, [&](std::ostream& os) {
            print_model_summary(os, ctx.model);
            os << "given: " << given.to_string() << "\n";
            os << "a_B: " << fmt(conditioned.params().a) << "\n";
            os << "b_B: " << fmt(conditioned.params().b) << "\n";
            os << "c_B: " << fmt(conditioned.params().c()) << "\n";
        }, kExitOk);
    }

    // Table over all events, or only the ones named in the model file.
    std::vector<std::pair<std::string, Event>> rows;
    if (rows_mode == "named") {
        for (const auto& [name, event] : ctx.file.events) rows.emplace_back(name, event);
        if (rows.empty()) throw UsageError("--rows named needs events declared in the model file");
    } else {
        const EventMask full = ctx.model.space()->full_mask();
        for (EventMask m = 0; m <= full; ++m) {
            Event e(ctx.model.space(), m);
            rows.emplace_back(e.to_string(), e);
        }
    }

    OrderedJson table = OrderedJson::array();
    for (const auto& [label, event] : rows) {
        const ConditionalAssessment cond = regular ? regular_extension(ctx.model, event, given)
                                                   : natural_extension(ctx.model, event, given);
        OrderedJson row;
        row["event"] = label;
        row["lower"] = rational_json(cond.lower);
        row["upper"] = rational_json(cond.upper);
        row["case"] = cond.case_label;
        if (regular) row["differs_from_natural"] = regular_differs(ctx.model, event, given);
        table.push_back(row);
    }
    result["rows"] = table;
    ctx.report["result"] = result;
    return finish(ctx, out, [&](std::ostream& os) {
        print_model_summary(os, ctx.model);
        os << "given: " << given.to_string() << " method: " << (regular ? "regular" : "natural")
           << "\n";
        for (const auto& row : ctx.report["result"]["rows"]) {
            os << "  " << std::left << std::setw(18) << row["event"].get<std::string>()
               << " lower=" << row["lower"]["frac"].get<std::string>()
               << " upper=" << row["upper"]["frac"].get<std::string>()
               << " case=" << row["case"].get<std::string>();
            if (row.contains("differs_from_natural") && row["differs_from_natural"].get<bool>())
                os << " [differs from natural]";
            os << "\n";
        }
    }, kExitOk);
}

int cmd_dilation(Context& ctx, const std::string& event_expr, const std::string& partition_expr,
                 const std::string& mode_name, bool characterize, bool coarsen, bool with_extent,
                 bool with_constrict, std::ostream& out) {
    const Event a = resolve_event(ctx.file, event_expr);
    const Partition part = resolve_partition(ctx.file, partition_expr);
    const DilationMode mode = mode_name == "strict" ? DilationMode::strict : DilationMode::weak;

    int exit_code = kExitOk;
    const DilationReport direct = check_dilation(ctx.model, a, part, mode);
    OrderedJson result;
    result["event"] = a.to_string();
    result["partition"] = part.to_string();
    OrderedJson direct_json = dilation_report_json(direct);

    std::optional<DilationReport> characterized;
    if (characterize) {
        characterized = characterize_dilation(ctx.model, a, part);
        // Merge the per-block labels into the main table.
        for (std::size_t i = 0; i < direct.per_block.size(); ++i) {
            direct_json["rows"][i]["lower_case"] = characterized->per_block[i].lower_case;
            direct_json["rows"][i]["upper_case"] = characterized->per_block[i].upper_case;
        }
        const bool agree = (characterized->verdict != DilationVerdict::none) ==
                           (direct.verdict != DilationVerdict::none);
        direct_json["characterization_verdict"] = to_string(characterized->verdict);
        direct_json["characterization_agrees"] = agree;
        if (!agree) exit_code = kExitVerificationFailure;
    }
    for (const auto& [key, value] : direct_json.items()) result[key] = value;

    if (coarsen) {
        OrderedJson coarsening;
        const CoarseningHypotheses hyp = coarsening_hypotheses(ctx.model, a, part);
        coarsening["hypotheses"] = OrderedJson{{"verdict", hyp.verdict},
                                               {"a1", hyp.a1},
                                               {"a2", hyp.a2},
                                               {"b1", hyp.b1},
                                               {"b2", hyp.b2}};
        OrderedJson list = OrderedJson::array();
        for_each_coarsening(part, [&](const Partition& coarser) {
            const DilationReport rep = check_dilation(ctx.model, a, coarser, mode);
            list.push_back(OrderedJson{{"partition", coarser.to_string()},
                                       {"verdict", to_string(rep.verdict)}});
            return true;
        });
        coarsening["coarsenings"] = list;
        const auto found = find_dilating_coarser(ctx.model, a, part, mode);
        coarsening["first_dilating"] = found ? OrderedJson(found->to_string()) : OrderedJson();
        result["coarsening"] = coarsening;
    }

    if (with_extent) {
        const ExtentReport ext = extent(ctx.model, a, part);
        OrderedJson extent_json;
        extent_json["delta"] = rational_json(ext.delta);
        extent_json["delta_bruteforce"] = rational_json(ext.delta_bruteforce);
        extent_json["argmin_block"] = ext.argmin_block.to_string();
        if (ext.b_star) extent_json["b_star"] = ext.b_star->to_string();
        if (ext.m0) extent_json["m0"] = rational_json(*ext.m0);
        if (ext.m1) extent_json["m1"] = rational_json(*ext.m1);
        const bool agree = ext.delta == ext.delta_bruteforce;
        extent_json["cross_check"] = agree ? "ok" : "mismatch";
        if (!agree) exit_code = kExitVerificationFailure;
        result["extent"] = extent_json;
    }

    if (with_constrict) {
        const ConstrictionReport con = check_constriction(ctx.model, a, part);
        OrderedJson constrict_json;
        constrict_json["constricts"] = con.constricts;
        constrict_json["shortcut"] = con.shortcut;
        if (con.shortcut_verdict) {
            constrict_json["shortcut_verdict"] = *con.shortcut_verdict;
            const bool agree = *con.shortcut_verdict == con.constricts;
            constrict_json["cross_check"] = agree ? "ok" : "mismatch";
            if (!agree) exit_code = kExitVerificationFailure;
        }
        if (con.strict_witness) constrict_json["strict_witness"] = con.strict_witness->to_string();
        result["constriction"] = constrict_json;
    }

    ctx.report["result"] = result;
    return finish(ctx, out, [&](std::ostream& os) {
        print_model_summary(os, ctx.model);
        os << "event A: " << a.to_string() << "\n";
        os << "partition: " << part.to_string() << "\n";
        DilationReport printable = direct;
        if (characterized)
            for (std::size_t i = 0; i < printable.per_block.size(); ++i) {
                printable.per_block[i].lower_case = characterized->per_block[i].lower_case;
                printable.per_block[i].upper_case = characterized->per_block[i].upper_case;
            }
        print_dilation_report(os, printable);
        if (result.contains("coarsening")) {
            const auto& c = result["coarsening"];
            os << "coarsening hypotheses verdict: "
               << (c["hypotheses"]["verdict"].get<bool>() ? "applicable" : "not applicable")
               << " (a1=" << c["hypotheses"]["a1"].get<bool>()
               << " a2=" << c["hypotheses"]["a2"].get<bool>()
               << " b1=" << c["hypotheses"]["b1"].get<bool>()
               << " b2=" << c["hypotheses"]["b2"].get<bool>() << ")\n";
            for (const auto& row : c["coarsenings"])
                os << "  coarser " << row["partition"].get<std::string>() << ": "
                   << row["verdict"].get<std::string>() << "\n";
            os << "first dilating coarsening: "
               << (c["first_dilating"].is_null() ? std::string("none")
                                                 : c["first_dilating"].get<std::string>())
               << "\n";
        }
        if (result.contains("extent")) {
            const auto& e = result["extent"];
            os << "extent: " << e["delta"]["frac"].get<std::string>() << " ("
               << e["delta"]["dec"].get<std::string>()
               << "), brute force: " << e["delta_bruteforce"]["frac"].get<std::string>()
               << ", cross-check: " << e["cross_check"].get<std::string>() << "\n";
        }
        if (result.contains("constriction")) {
            const auto& c = result["constriction"];
            os << "constricts: " << (c["constricts"].get<bool>() ? "yes" : "no")
               << " (shortcut: " << c["shortcut"].get<std::string>() << ")\n";
        }
    }, exit_code);
}

int cmd_verify(Context& ctx, const std::string& pairs_mode, unsigned long samples,
               std::ostream& out) {
    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;
    int exit_code = kExitOk;

    const VertexSet vertices = permutation_vertices(ctx.model);
    checks.push_back({"vertex-count", true, std::to_string(vertices.size()) + " vertices"});

    const auto lpr = lower_table(ctx.model);
    const auto upr = upper_table(ctx.model);
    const EnvelopeResult envelope = envelope_check(
        vertices, [&](EventMask m) { return lpr[m]; }, [&](EventMask m) { return upr[m]; });
    checks.push_back({"envelope", envelope.ok,
                      envelope.ok ? "min/max over vertices reproduce lower/upper"
                                  : "witness " + envelope.witness->to_string()});
    if (!envelope.ok) exit_code = kExitVerificationFailure;

    // Differential conditioning test: closed form vs ratio form vs vertex
    // oracle, exact equality.
    const EventMask full = ctx.model.space()->full_mask();
    std::vector<std::pair<EventMask, EventMask>> pairs;
    if (pairs_mode == "sample") {
        std::mt19937_64 rng(ctx.common.seed);
        std::uniform_int_distribution<EventMask> dist(1, full);
        while (pairs.size() < samples) {
            const EventMask b = dist(rng);
            if (ctx.model.lower_mask(b).sign() <= 0) continue;
            pairs.emplace_back(dist(rng) & full, b);
        }
    } else {
        for (EventMask b = 1; b <= full; ++b) {
            if (ctx.model.lower_mask(b).sign() <= 0) continue;
            for (EventMask a = 0; a <= full; ++a) pairs.emplace_back(a, b);
        }
    }

    std::string mismatch;
    std::size_t tested = 0;
    for (const auto& [am, bm] : pairs) {
        const Event a(ctx.model.space(), am);
        const Event b(ctx.model.space(), bm);
        const ConditionalAssessment closed = natural_extension(ctx.model, a, b);
        const ConditionalAssessment ratio = two_monotone_extension(ctx.model, a, b);
        const ConditionalAssessment oracle = oracle_natural_extension(ctx.model, vertices, a, b);
        ++tested;
        if (closed.lower != ratio.lower || closed.upper != ratio.upper ||
            closed.lower != oracle.lower || closed.upper != oracle.upper) {
            std::ostringstream what;
            what << "A=" << a.to_string() << " B=" << b.to_string() << ": closed ("
                 << closed.lower << ", " << closed.upper << ") ratio (" << ratio.lower << ", "
                 << ratio.upper << ") oracle (" << oracle.lower << ", " << oracle.upper << ")";
            mismatch = what.str();
            break;
        }
    }
    checks.push_back({"conditioning-differential", mismatch.empty(),
                      mismatch.empty() ? std::to_string(tested) + " (A,B) pairs, exact agreement"
                                       : mismatch});
    if (!mismatch.empty()) exit_code = kExitVerificationFailure;

    OrderedJson result;
    OrderedJson rows = OrderedJson::array();
    for (const auto& check : checks)
        rows.push_back(OrderedJson{{"check", check.name},
                                   {"status", check.pass ? "pass" : "fail"},
                                   {"detail", check.detail}});
    result["rows"] = rows;
    result["pairs"] = pairs_mode;
    ctx.report["result"] = result;
    return finish(ctx, out, [&](std::ostream& os) {
        print_model_summary(os, ctx.model);
        if (pairs_mode == "sample")
            os << "sampled pairs: " << samples << " (seed " << ctx.common.seed << ")\n";
        for (const auto& check : checks)
            os << "  " << std::left << std::setw(28) << check.name
               << (check.pass ? "PASS  " : "FAIL  ") << check.detail << "\n";
        os << (exit_code == kExitOk ? "verification passed" : "verification FAILED") << "\n";
    }, exit_code);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coherent nearly-linear lower/upper probability models: evaluation, "
                 "conditioning, and dilation analytics"};
    app.name("nl");
    app.require_subcommand(1);

    CommonArgs common;
    std::string event_expr, given_expr, partition_expr;
    std::string method = "natural", emit = "table", rows_mode = "all", mode_name = "weak";
    std::string pairs_mode = "all";
    unsigned long samples = 50;
    bool characterize = false, coarsen_flag = false, extent_flag = false, constrict_flag = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--model", common.model_path, "model file (JSON)")->required();
        sub->add_option("--format", common.format, "text | json | csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--seed", common.seed, "seed for sampled scans");
    };

    CLI::App* eval = app.add_subcommand("eval", "lower/upper probability of an event");
    add_common(eval);
    eval->add_option("--event", event_expr, "event expression or declared name")->required();

    CLI::App* condition = app.add_subcommand("condition", "condition the model on an event");
    add_common(condition);
    condition->add_option("--given", given_expr, "conditioning event")->required();
    condition->add_option("--method", method, "natural | regular")
        ->check(CLI::IsMember({"natural", "regular"}));
    condition->add_option("--emit", emit, "table | params | model")
        ->check(CLI::IsMember({"table", "params", "model"}));
    condition->add_option("--rows", rows_mode, "all | named")
        ->check(CLI::IsMember({"all", "named"}));

    CLI::App* dilation = app.add_subcommand("dilation", "dilation analysis for (A, partition)");
    add_common(dilation);
    dilation->add_option("--event", event_expr, "event A")->required();
    dilation->add_option("--partition", partition_expr,
                         "declared partition name, or inline 'expr; expr; ...'")
        ->required();
    dilation->add_option("--mode", mode_name, "weak | strict")
        ->check(CLI::IsMember({"weak", "strict"}));
    dilation->add_flag("--characterize", characterize, "per-block a1/a2 + b1/b2 labels");
    dilation->add_flag("--coarsen", coarsen_flag, "coarsening condition and scan");
    dilation->add_flag("--extent", extent_flag, "extent of dilation");
    dilation->add_flag("--constrict", constrict_flag, "constriction check");

    CLI::App* extent_cmd = app.add_subcommand("extent", "extent of dilation");
    add_common(extent_cmd);
    extent_cmd->add_option("--event", event_expr, "event A")->required();
    extent_cmd->add_option("--partition", partition_expr, "partition")->required();

    CLI::App* coarsen_cmd = app.add_subcommand("coarsen", "coarsening condition and scan");
    add_common(coarsen_cmd);
    coarsen_cmd->add_option("--event", event_expr, "event A")->required();
    coarsen_cmd->add_option("--partition", partition_expr, "partition")->required();
    coarsen_cmd->add_option("--mode", mode_name, "weak | strict")
        ->check(CLI::IsMember({"weak", "strict"}));

    CLI::App* constrict_cmd = app.add_subcommand("constrict", "constriction check");
    add_common(constrict_cmd);
    constrict_cmd->add_option("--event", event_expr, "event A")->required();
    constrict_cmd->add_option("--partition", partition_expr, "partition")->required();

    CLI::App* verify = app.add_subcommand("verify", "envelope and differential conditioning checks");
    add_common(verify);
    verify->add_option("--pairs", pairs_mode, "all | sample")
        ->check(CLI::IsMember({"all", "sample"}));
    verify->add_option("--samples", samples, "sampled (A,B) pairs when --pairs sample");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        Context ctx(common, load_model_file(common.model_path));
        ctx.report["command"] = app.get_subcommands().front()->get_name();
        ctx.report["seed"] = common.seed;
        ctx.report["model"] = model_summary(ctx.model);

        if (eval->parsed()) return cmd_eval(ctx, event_expr, out);
        if (condition->parsed())
            return cmd_condition(ctx, given_expr, method, emit, rows_mode, out);
        if (dilation->parsed())
            return cmd_dilation(ctx, event_expr, partition_expr, mode_name, characterize,
                                coarsen_flag, extent_flag, constrict_flag, out);
        if (extent_cmd->parsed())
            return cmd_dilation(ctx, event_expr, partition_expr, "strict", false, false, true,
                                false, out);
        if (coarsen_cmd->parsed())
            return cmd_dilation(ctx, event_expr, partition_expr, mode_name, false, true, false,
                                false, out);
        if (constrict_cmd->parsed())
            return cmd_dilation(ctx, event_expr, partition_expr, mode_name, false, false, false,
                                true, out);
        if (verify->parsed()) return cmd_verify(ctx, pairs_mode, samples, out);
        err << "usage error: no subcommand\n";
        return kExitUsage;
    } catch (const AssumptionError& e) {
        err << "assumption gate " << e.gate << ": " << e.what() << "\n";
        return kExitAssumptionGate;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
}

}  // namespace nlm::cli
