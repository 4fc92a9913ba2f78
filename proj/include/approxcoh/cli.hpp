#pragma once

// Command-line front end. run() parses arguments, dispatches to the library and writes JSON or CSV with the tool
// version and the full configuration echoed.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "charsum.hpp"
#include "cochain.hpp"
#include "cohomology.hpp"
#include "corrector.hpp"
#include "gowers.hpp"
#include "limits.hpp"
#include "poly_io.hpp"
#include "rank.hpp"

namespace approxcoh::cli {

inline constexpr const char* kToolName = "approxcoh";
inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, precondition = 1, budget = 2, unknown_command = 64 };

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline json read_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw PreconditionError("'" + path + "' is not valid JSON: " + e.what());
    }
}

/// Accepts a bare object or the "result" envelope written by this tool.
inline const json& unwrap(const json& j, const char* key) {
    if (j.contains(key)) return j;
    if (j.contains("result") && j["result"].contains(key)) return j["result"];
    if (j.contains("result") && j["result"].contains("cochain") && j["result"]["cochain"].contains(key))
        return j["result"]["cochain"];
    throw PreconditionError(std::string("JSON input has no '") + key + "' field");
}

template <class T>
T field_of(const json& j, const char* key) {
    if (!j.contains(key)) throw PreconditionError(std::string("missing field '") + key + "'");
    try {
        return j[key].get<T>();
    } catch (const json::exception& e) {
        throw PreconditionError(std::string("field '") + key + "' has the wrong type: " + e.what());
    }
}

inline json rational_json(const Rational& r) { return json{{"num", r.num}, {"den", r.den}, {"text", r.str()}}; }

inline json cochain_json(const Cochain& A) {
    json values = json::object();
    for (std::uint64_t i = 0; i < A.size(); ++i) values[std::to_string(i)] = to_text(A.at(i));
    return json{{"group", {{"p", A.group().p.value()}, {"s", A.group().s}}},
                {"degree", A.degree()},
                {"action", to_string(A.action())},
                {"values", values}};
}

inline Cochain cochain_from_json(const json& root) {
    const json& j = unwrap(root, "group");
    const auto& g = j["group"];
    const unsigned p = field_of<unsigned>(g, "p");
    if (!is_prime(p)) throw PreconditionError("group modulus " + std::to_string(p) + " is not prime");
    const GroupSpec G(PrimeModulus(p), field_of<std::size_t>(g, "s"));
    const unsigned degree = j.contains("degree") ? field_of<unsigned>(j, "degree") : 1;
    const std::string act = j.contains("action") ? field_of<std::string>(j, "action") : "trivial";
    if (act != "trivial" && act != "translation") throw PreconditionError("unknown action '" + act + "'");
    const std::uint64_t count = checked_pow(G.size(), degree);
    std::vector<std::optional<Poly>> vals(count);
    const auto& v = j.at("values");
    auto put = [&](std::uint64_t idx, const json& text) {
        if (idx >= count) throw PreconditionError("cochain value index " + std::to_string(idx) + " out of range");
        if (!text.is_string()) throw PreconditionError("cochain values must be polynomial strings");
        vals[idx] = parse_poly(text.get<std::string>());
    };
    if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) put(i, v[i]);
    } else if (v.is_object()) {
        for (const auto& [k, text] : v.items()) {
            std::size_t pos = 0;
            const auto idx = detail::parse_number(k, pos, "value index");
            if (pos != k.size()) throw PreconditionError("bad value key '" + k + "'");
            put(idx, text);
        }
    } else {
        throw PreconditionError("'values' must be an array or an object");
    }
    std::vector<Poly> out;
    for (std::uint64_t i = 0; i < count; ++i) {
        if (!vals[i]) throw PreconditionError("cochain value " + std::to_string(i) + " is missing");
        out.push_back(std::move(*vals[i]));
    }
    return Cochain(G, degree, act == "translation" ? Action::translation : Action::trivial, std::move(out));
}

inline json linear_map_json(const LinearMap& chi) {
    json imgs = json::array();
    for (const auto& q : chi.images()) imgs.push_back(to_text(q));
    return json{{"group", {{"p", chi.group().p.value()}, {"s", chi.group().s}}}, {"images", imgs}};
}

inline LinearMap linear_map_from_json(const json& root) {
    const json& j = unwrap(root, "images");
    const auto& g = j.at("group");
    const unsigned p = field_of<unsigned>(g, "p");
    if (!is_prime(p)) throw PreconditionError("group modulus " + std::to_string(p) + " is not prime");
    std::vector<Poly> imgs;
    for (const auto& t : j.at("images")) imgs.push_back(parse_poly(t.get<std::string>()));
    return LinearMap(GroupSpec(PrimeModulus(p), field_of<std::size_t>(g, "s")), std::move(imgs));
}

inline json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(r);
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j, const PrimeModulus& p, std::size_t dim) {
    if (!j.is_array() || j.size() != dim) throw PreconditionError("matrix must have " + std::to_string(dim) + " rows");
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!j[i].is_array() || j[i].size() != dim) throw PreconditionError("matrix row of the wrong length");
        for (std::size_t k = 0; k < dim; ++k) m(i, k) = p.from_int(j[i][k].get<std::int64_t>());
    }
    return m;
}

inline MatrixCochain matrix_cochain_from_json(const json& root) {
    const json& j = unwrap(root, "matrix_cochain")["matrix_cochain"];
    const unsigned p = field_of<unsigned>(j, "p");
    if (!is_prime(p)) throw PreconditionError("modulus " + std::to_string(p) + " is not prime");
    MatrixCochain A;
    A.p = PrimeModulus(p);
    const std::string dom = j.contains("domain") ? field_of<std::string>(j, "domain") : "interval";
    if (dom != "interval" && dom != "cyclic") throw PreconditionError("domain must be interval or cyclic");
    A.domain = dom == "cyclic" ? MatrixCochain::Domain::cyclic : MatrixCochain::Domain::interval;
    A.N = field_of<int>(j, "N");
    A.dim = field_of<std::size_t>(j, "dim");
    for (const auto& m : j.at("values")) A.values.push_back(matrix_from_json(m, A.p, A.dim));
    A.validate();
    return A;
}

inline json defect_json(const DefectReport& r) {
    json hist = json::array();
    for (const auto& [b, c] : r.histogram) hist.push_back(json{{"lower", b.first}, {"upper", b.second}, {"count", c}});
    return json{{"max_rank_upper", r.max_rank_upper},
                {"max_rank_lower", r.max_rank_lower},
                {"argmax", r.argmax},
                {"tuples", r.tuples},
                {"histogram", hist}};
}

inline json rank_json(const Poly& P, const RankResult& r, bool homogeneous) {
    json out{{"lower", r.lower}, {"upper", r.upper}};
    out["rank"] = r.value() ? json(*r.value()) : json(nullptr);
    out["method"] = to_string(r.method);
    out["base_field_upper"] = r.base_field_upper ? json(*r.base_field_upper) : json(nullptr);
    out["extension_improved"] = r.extension_improved;
    if (r.certificate) {
        const auto& c = *r.certificate;
        json terms = json::array();
        for (const auto& [a, b] : c.terms) terms.push_back(json::array({body_text(a), body_text(b)}));
        out["certificate"] = json{
            {"field", {{"p", c.field.characteristic()}, {"m", c.extension_degree()}}},
            {"coefficients", c.extension_degree() == 1 ? "residues" : "extension element codes (base-p digits)"},
            {"terms", terms},
            {"subspace", c.subspace},
            {"verified", verify_certificate(P, c, homogeneous)}};
    } else {
        out["certificate"] = nullptr;
    }
    return out;
}

inline std::vector<std::size_t> parse_range(const std::string& s) {
    std::vector<std::size_t> out;
    auto dots = s.find("..");
    try {
        if (dots != std::string::npos) {
            const auto a = std::stoul(s.substr(0, dots)), b = std::stoul(s.substr(dots + 2));
            if (a > b) throw PreconditionError("empty range '" + s + "'");
            for (auto i = a; i <= b; ++i) out.push_back(i);
        } else {
            std::stringstream in(s);
            std::string tok;
            while (std::getline(in, tok, ',')) out.push_back(std::stoul(tok));
        }
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const PreconditionError*>(&e)) throw;
        throw PreconditionError("bad range '" + s + "'");
    }
    if (out.empty()) throw PreconditionError("empty range '" + s + "'");
    return out;
}

struct Common {
    std::string out_path;
    std::string format = "json";
    std::uint64_t budget = kDefaultBudget;
    unsigned workers = default_workers();
};

inline json envelope(const std::string& command, const json& config, const json& result) {
    return json{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"config", config},
                {"result", result}};
}

inline void emit(const Common& c, const std::string& text, std::ostream& out) {
    if (c.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw PreconditionError("cannot write '" + c.out_path + "'");
    f << text;
}

inline void emit_json(const Common& c, const std::string& command, const json& config, const json& result,
                      std::ostream& out) {
    if (c.format != "json") throw PreconditionError("command '" + command + "' writes JSON only");
    emit(c, envelope(command, config, result).dump(2) + "\n", out);
}

inline RankKind parse_kind(const std::string& k) {
    if (k == "auto") return RankKind::automatic;
    if (k == "A" || k == "Ad") return RankKind::homogeneous;
    if (k == "B" || k == "Bd") return RankKind::inhomogeneous;
    throw PreconditionError("unknown rank kind '" + k + "'");
}

inline Filtration parse_filtration(const std::string& f, unsigned d) {
    if (f == "Ad") return {Filtration::Kind::A, d};
    if (f == "Bd") return {Filtration::Kind::B, d};
    throw PreconditionError("filtration must be Ad or Bd");
}

inline std::string usage() {
    return "usage: approxcoh <command> [options]\n"
           "commands: rank, gowers, delta-degree, defect, cocycle-check, coboundary, correct, synthesize, koenig,\n"
           "          lift, experiment minimax-growth\n"
           "run 'approxcoh <command> --help' for the options of a command\n";
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    static const std::set<std::string> commands{"rank",    "gowers",     "delta-degree", "defect",
                                                "cocycle-check", "coboundary", "correct",  "synthesize",
                                                "koenig",  "lift",       "experiment"};
    if (args.empty()) {
        err << usage();
        return unknown_command;
    }
    if (args[0] == "--version") {
        out << kToolName << ' ' << kToolVersion << '\n';
        return ok;
    }
    if (args[0] != "--help" && args[0] != "-h" && !commands.count(args[0])) {
        err << "unknown command '" << args[0] << "'\n" << usage();
        return unknown_command;
    }

    CLI::App app{"approximate cohomology toolkit", kToolName};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* s) {
        s->add_option("--out", common.out_path, "output file (stdout when omitted)");
        s->add_option("--budget", common.budget, "enumeration cap");
        s->add_option("--workers", common.workers, "worker threads");
    };

    // rank
    std::string input, method = "auto", kind = "auto";
    unsigned ext_degree = 2;
    std::optional<unsigned> max_r;
    auto* rank_cmd = app.add_subcommand("rank", "rank of a polynomial with certificate");
    rank_cmd->add_option("--input", input, "polynomial file")->required();
    rank_cmd->add_option("--method", method)->check(CLI::IsMember({"auto", "quad", "subspace"}));
    rank_cmd->add_option("--kind", kind)->check(CLI::IsMember({"auto", "A", "B", "Ad", "Bd"}));
    rank_cmd->add_option("--ext-degree", ext_degree);
    rank_cmd->add_option("--max-r", max_r);
    add_common(rank_cmd);

    // gowers
    unsigned m = 2;
    std::string algorithm = "naive";
    auto* gowers_cmd = app.add_subcommand("gowers", "Gowers norm of a polynomial phase");
    gowers_cmd->add_option("--input", input, "polynomial file")->required();
    gowers_cmd->add_option("--m", m)->required();
    gowers_cmd->add_option("--algorithm", algorithm)->check(CLI::IsMember({"naive", "derivative"}));
    add_common(gowers_cmd);

    // delta-degree
    std::string table;
    unsigned max_d = 8;
    auto* dd_cmd = app.add_subcommand("delta-degree", "difference degree of a value table");
    dd_cmd->add_option("--table", table, "CSV value table")->required();
    dd_cmd->add_option("--max-d", max_d);
    add_common(dd_cmd);

    // defect, cocycle-check, coboundary
    std::string cochain_path, filtration = "Ad";
    unsigned level = 0;
    auto* defect_cmd = app.add_subcommand("defect", "rank brackets of the coboundary of a cochain");
    defect_cmd->add_option("--cochain", cochain_path)->required();
    defect_cmd->add_option("--filtration", filtration)->check(CLI::IsMember({"Ad", "Bd"}));
    add_common(defect_cmd);
    auto* cc_cmd = app.add_subcommand("cocycle-check", "is the cochain an approximate cocycle at level i");
    cc_cmd->add_option("--cochain", cochain_path)->required();
    cc_cmd->add_option("--i", level)->required();
    cc_cmd->add_option("--filtration", filtration)->check(CLI::IsMember({"Ad", "Bd"}));
    add_common(cc_cmd);
    auto* cob_cmd = app.add_subcommand("coboundary", "coboundary of a cochain");
    cob_cmd->add_option("--cochain", cochain_path)->required();
    unsigned cob_n = 0;
    cob_cmd->add_option("--n", cob_n, "degree of the input cochain (checked when given)");
    add_common(cob_cmd);

    // correct
    std::uint64_t seed = 0;
    std::string cmethod = "exhaustive";
    unsigned iterations = 64, restarts = 4;
    auto* correct_cmd = app.add_subcommand("correct", "closest homomorphism in rank distance");
    correct_cmd->add_option("--cochain", cochain_path)->required();
    correct_cmd->add_option("--method", cmethod)->check(CLI::IsMember({"exhaustive", "greedy", "cyclic"}));
    correct_cmd->add_option("--seed", seed);
    correct_cmd->add_option("--iterations", iterations);
    correct_cmd->add_option("--restarts", restarts);
    add_common(correct_cmd);

    // synthesize
    std::string chi_path, noise_model = "iid";
    unsigned noise_rank = 1;
    auto* synth_cmd = app.add_subcommand("synthesize", "homomorphism plus bounded-rank noise");
    synth_cmd->add_option("--chi", chi_path)->required();
    synth_cmd->add_option("--noise-rank", noise_rank);
    synth_cmd->add_option("--noise-model", noise_model)->check(CLI::IsMember({"constant", "iid"}));
    synth_cmd->add_option("--seed", seed);
    add_common(synth_cmd);

    // koenig
    std::string system_path;
    auto* koenig_cmd = app.add_subcommand("koenig", "compatible thread through a finite inverse system");
    koenig_cmd->add_option("--system", system_path)->required();
    add_common(koenig_cmd);

    // lift
    unsigned C = 1;
    std::optional<std::size_t> depth;
    auto* lift_cmd = app.add_subcommand("lift", "level-by-level lift of a correcting linear map");
    lift_cmd->add_option("--input", input, "degree-1 cochain JSON")->required();
    lift_cmd->add_option("--C", C)->required();
    lift_cmd->add_option("--depth", depth, "use V_depth = span(e_1..e_depth); defaults to s");
    add_common(lift_cmd);

    // experiment minimax-growth
    GrowthConfig gcfg;
    std::string n_range = "1,2", s_range = "1,2";
    auto* exp_cmd = app.add_subcommand("experiment", "experiments");
    exp_cmd->require_subcommand(1);
    auto* growth_cmd = exp_cmd->add_subcommand("minimax-growth", "worst minimax distance by defect");
    growth_cmd->add_option("--p", gcfg.p)->required();
    growth_cmd->add_option("--d", gcfg.d)->required();
    growth_cmd->add_option("--n-range", n_range, "e.g. 1,2 or 1..3");
    growth_cmd->add_option("--s-range", s_range, "e.g. 1,2 or 1..3");
    growth_cmd->add_option("--samples", gcfg.samples, "sample size when enumeration does not fit");
    growth_cmd->add_option("--seed", gcfg.seed);
    growth_cmd->add_option("--format", common.format)->check(CLI::IsMember({"json", "csv"}));
    add_common(growth_cmd);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return precondition;
    }

    try {
        if (growth_cmd->parsed() && common.format == "json" && !growth_cmd->count("--format")) common.format = "csv";
        const json base{{"budget", common.budget}, {"workers", common.workers}};

        if (rank_cmd->parsed()) {
            const Poly P = parse_poly(read_file(input));
            RankOptions o;
            o.method = method == "quad" ? RankOptions::Method::quad
                       : method == "subspace" ? RankOptions::Method::subspace
                                              : RankOptions::Method::automatic;
            o.kind = parse_kind(kind);
            o.ext_degree = ext_degree;
            o.max_r = max_r;
            o.budget = common.budget;
            const bool homogeneous =
                o.kind == RankKind::homogeneous || (o.kind == RankKind::automatic && P.is_homogeneous());
            json cfg = base;
            cfg.update(json{{"input", input}, {"polynomial", to_text(P)}, {"method", method}, {"kind", kind},
                            {"ext_degree", ext_degree}, {"max_r", max_r ? json(*max_r) : json(nullptr)}});
            emit_json(common, "rank", cfg, rank_json(P, rank(P, o), homogeneous), out);
        } else if (gowers_cmd->parsed()) {
            const Poly P = parse_poly(read_file(input));
            const auto alg = algorithm == "naive" ? GowersAlgorithm::naive : GowersAlgorithm::derivative;
            const auto r = gowers_norm(PhaseFunction::from_poly(P), m, alg, common.budget, common.workers);
            json cfg = base;
            cfg.update(json{{"input", input}, {"polynomial", to_text(P)}, {"m", m}, {"algorithm", algorithm}});
            json res{{"m", r.m},
                     {"algorithm", to_string(r.algorithm)},
                     {"counts", r.counts.counts()},
                     {"raw_power", r.raw_power ? rational_json(*r.raw_power) : json(nullptr)},
                     {"raw_real", static_cast<double>(r.raw_real)},
                     {"value", static_cast<double>(r.value)}};
            emit_json(common, "gowers", cfg, res, out);
        } else if (dd_cmd->parsed()) {
            std::istringstream in(read_file(table));
            const auto f = read_value_table(in);
            const auto deg = delta_degree(f, max_d, common.budget);
            json cfg = base;
            cfg.update(json{{"table", table},
                            {"p", f.modulus().value()},
                            {"n", f.nvars()},
                            {"k", f.torsion()},
                            {"max_d", max_d}});
            emit_json(common, "delta-degree", cfg, json{{"degree", deg ? json(*deg) : json(nullptr)}}, out);
        } else if (defect_cmd->parsed() || cc_cmd->parsed()) {
            const Cochain A = cochain_from_json(read_json(cochain_path));
            const auto f = parse_filtration(filtration, A.degree_bound());
            RankOptions o;
            o.budget = common.budget;
            RankCache cache(o);
            const auto rep = defect(A, f, cache);
            json cfg = base;
            cfg.update(json{{"cochain", cochain_path}, {"filtration", filtration}, {"d", f.d}});
            if (defect_cmd->parsed()) {
                emit_json(common, "defect", cfg, defect_json(rep), out);
            } else {
                cfg["i"] = level;
                emit_json(common, "cocycle-check", cfg,
                          json{{"verdict", to_string(is_approx_cocycle(rep, level))}, {"defect", defect_json(rep)}},
                          out);
            }
        } else if (cob_cmd->parsed()) {
            const Cochain A = cochain_from_json(read_json(cochain_path));
            if (cob_cmd->count("--n") && cob_n != A.degree())
                throw PreconditionError("cochain has degree " + std::to_string(A.degree()) + ", not " +
                                        std::to_string(cob_n));
            json cfg = base;
            cfg.update(json{{"cochain", cochain_path}, {"n", A.degree()}});
            emit_json(common, "coboundary", cfg, json{{"cochain", cochain_json(coboundary(A))}}, out);
        } else if (correct_cmd->parsed()) {
            const json in = read_json(cochain_path);
            json cfg = base;
            cfg.update(json{{"cochain", cochain_path}, {"method", cmethod}, {"seed", seed}});
            if (cmethod == "cyclic") {
                const auto A = matrix_cochain_from_json(in);
                const auto r = cyclic_rank1_correct(A);
                emit_json(common, "correct", cfg,
                          json{{"X", matrix_json(r.X)},
                               {"distance", r.distance},
                               {"max_defect_rank", r.max_defect_rank},
                               {"structure", r.structure},
                               {"structure_found", r.structure_found},
                               {"counterexample", r.counterexample}},
                          out);
            } else {
                const Cochain A = cochain_from_json(in);
                if (A.degree() != 1) throw PreconditionError("correct needs a degree-1 cochain");
                const auto& p = A.group().p;
                const HomogeneousSpace H(p, A.nvars(), A.degree_bound());
                if (cmethod == "exhaustive")
                    require_budget("exhaustive correction", checked_mul(checked_pow(H.size(), A.group().s), A.size()),
                                   common.budget);
                RankOptions o;
                o.budget = common.budget;
                const RankTable T(p, A.nvars(), A.degree_bound(), o, common.budget);
                const auto r = cmethod == "exhaustive"
                                   ? minimax_correct(A, T, common.budget, common.workers)
                                   : greedy_correct(A, T, seed, iterations, restarts);
                if (cmethod == "greedy") cfg.update(json{{"iterations", iterations}, {"restarts", restarts}});
                emit_json(common, "correct", cfg,
                          json{{"chi", linear_map_json(r.chi)},
                               {"distance", r.distance},
                               {"distance_lower", r.distance_lower},
                               {"method", to_string(r.method)},
                               {"optimal", r.optimal},
                               {"candidates", r.candidates}},
                          out);
            }
        } else if (synth_cmd->parsed()) {
            const LinearMap chi = linear_map_from_json(read_json(chi_path));
            RankOptions o;
            o.budget = common.budget;
            RankCache cache(o);
            const auto model = noise_model == "constant" ? NoiseModel::constant : NoiseModel::iid;
            const auto inst = synthesize(chi, noise_rank, model, seed, cache);
            json noise = json::array();
            for (const auto& q : inst.noise) noise.push_back(to_text(q));
            json cfg = base;
            cfg.update(json{{"chi", linear_map_json(chi)},
                            {"noise_rank", noise_rank},
                            {"noise_model", noise_model},
                            {"seed", seed}});
            emit_json(common, "synthesize", cfg,
                      json{{"cochain", cochain_json(inst.A)}, {"noise", noise}, {"defect", defect_json(inst.defect)}},
                      out);
        } else if (koenig_cmd->parsed()) {
            const json j = read_json(system_path);
            InverseSystem sys;
            sys.sizes = field_of<std::vector<std::size_t>>(j, "sizes");
            sys.maps = field_of<std::vector<std::vector<std::size_t>>>(j, "maps");
            const auto seq = koenig_select(sys);
            json cfg = base;
            cfg.update(json{{"system", system_path}, {"depth", sys.depth()}});
            emit_json(common, "koenig", cfg,
                      json{{"elements", seq.elements},
                           {"stable", seq.stable},
                           {"horizon", sys.depth()},
                           {"compatible", is_compatible(sys, seq.elements)}},
                      out);
        } else if (lift_cmd->parsed()) {
            Cochain P = cochain_from_json(read_json(input));
            const std::size_t s = P.group().s;
            const std::size_t N = depth.value_or(s);
            if (N > s) throw PreconditionError("depth exceeds the group dimension");
            if (N < s) {
                const GroupSpec G(P.group().p, N);
                const PointSpace S(P.group().p, N), T(P.group().p, s);
                std::vector<Poly> vals;
                for (std::uint64_t i = 0; i < S.size(); ++i) {
                    auto v = S.point(i);
                    v.resize(s, 0);
                    vals.push_back(P.at(T.index(v)));
                }
                P = Cochain(G, 1, P.action(), std::move(vals));
            }
            RankOptions o;
            o.budget = common.budget;
            const auto r = lift_correction(P, C, o, common.budget);
            json imgs = json::array();
            for (const auto& q : r.images) imgs.push_back(to_text(q));
            json cfg = base;
            cfg.update(json{{"input", input}, {"C", C}, {"depth", N}});
            emit_json(common, "lift", cfg,
                      json{{"images", imgs},
                           {"distance", r.distance},
                           {"widths", r.widths},
                           {"level_sizes", r.level_sizes},
                           {"thread", r.thread.elements},
                           {"undecided", r.undecided},
                           {"horizon", N}},
                      out);
        } else if (growth_cmd->parsed()) {
            if (!is_prime(gcfg.p)) throw PreconditionError("p must be prime");
            gcfg.n_range = parse_range(n_range);
            gcfg.s_range = parse_range(s_range);
            gcfg.budget = common.budget;
            const auto rows = minimax_growth_experiment(gcfg);
            json cfg = base;
            cfg.update(json{{"p", gcfg.p},
                            {"d", gcfg.d},
                            {"n_range", gcfg.n_range},
                            {"s_range", gcfg.s_range},
                            {"samples", gcfg.samples},
                            {"seed", gcfg.seed}});
            if (common.format == "csv") {
                std::string text = "# " + std::string(kToolName) + " " + kToolVersion +
                                   " experiment minimax-growth config=" + cfg.dump() + "\n" + growth_csv(rows);
                emit(common, text, out);
            } else {
                json res = json::array();
                for (const auto& r : rows)
                    res.push_back(json{{"p", r.p},
                                       {"d", r.d},
                                       {"n", r.n},
                                       {"s", r.s},
                                       {"defect", r.defect ? json(*r.defect) : json(nullptr)},
                                       {"distance", r.distance ? json(*r.distance) : json(nullptr)},
                                       {"method", r.method},
                                       {"optimal", r.optimal}});
                emit(common, envelope("experiment minimax-growth", cfg, json{{"rows", res}}).dump(2) + "\n", out);
            }
        }
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return budget;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return precondition;
    } catch (const json::exception& e) {
        err << "malformed input: " << e.what() << '\n';
        return precondition;
    }
    return ok;
}

}  // namespace approxcoh::cli
