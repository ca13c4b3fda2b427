#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "e6/classgroup.hpp"
#include "e6/constants.hpp"
#include "e6/expsums.hpp"
#include "e6/lattice.hpp"
#include "e6/surface.hpp"
#include "e6/torsor.hpp"

using namespace e6;
using json = nlohmann::ordered_json;

namespace {

struct crosscheck_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    long d = -1;
    std::string format = "json";
    int threads = 1;
    std::string rep = "forms";
};

std::string str(Ideal const & I)
{
    std::ostringstream os;
    os << I;
    return os.str();
}

std::string str(FracIdeal const & I)
{
    std::ostringstream os;
    os << I;
    return os.str();
}

std::string str(ProjPoint const & p)
{
    std::ostringstream os;
    os << p;
    return os.str();
}

Ideal parse_ideal(Field const & K, std::string const & text)
{
    std::vector<AlgNum> gens;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        AlgNum g = parse_algnum(part);
        if (!g.is_integral()) throw std::invalid_argument("ideal generators must be integral: " + text);
        gens.push_back(g);
    }
    if (gens.empty()) throw std::invalid_argument("no ideal generators in '" + text + "'");
    Ideal I = ideal_from_generators(K, gens);
    if (I.is_zero()) throw std::invalid_argument("the zero ideal is not allowed: " + text);
    return I;
}

long parse_count(std::string const & text)
{
    Rat q = parse_rational(text);
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw std::invalid_argument("not an integer: " + text);
    return q.get_num().get_si();
}

FieldContext field(Options const & o)
{
    return make_field(o.d, o.rep == "alternate" ? RepChoice::alternate : RepChoice::forms);
}

std::string csv_cell(json const & v)
{
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    if (v.is_number_float()) return fmt17(v.get<double>());
    if (v.is_null()) return "";
    if (v.is_structured()) return csv_cell(json(v.dump()));
    return v.dump();
}

/// Rows share their keys; the first row fixes the column order.
void emit(Options const & o, std::string const & command, json const & config, std::vector<json> const & rows)
{
    if (o.format == "csv") {
        std::vector<std::string> cols;
        std::set<std::string> seen;
        for (auto const & r : rows)
            for (auto it = r.begin(); it != r.end(); ++it)
                if (seen.insert(it.key()).second) cols.push_back(it.key());
        for (std::size_t i = 0; i < cols.size(); ++i) std::cout << (i ? "," : "") << cols[i];
        std::cout << "\n";
        for (auto const & r : rows) {
            for (std::size_t i = 0; i < cols.size(); ++i)
                std::cout << (i ? "," : "") << (r.contains(cols[i]) ? csv_cell(r[cols[i]]) : "");
            std::cout << "\n";
        }
    } else {
        json out;
        out["command"] = command;
        out["config"] = config;
        out["rows"] = rows;
        std::cout << out.dump(2) << "\n";
    }
}

json field_json(FieldContext const & ctx)
{
    return {{"d", ctx.K.d()}, {"disc", ctx.K.disc()}, {"h", ctx.h}, {"w", ctx.K.unit_count()}};
}

/* --- count --------------------------------------------------------------- */

int cmd_count(Options const & o, std::string const & mode, std::vector<std::string> const & bounds,
              std::string const & dump)
{
    FieldContext ctx = field(o);
    Field const & K = ctx.K;
    std::ofstream dump_file;
    if (!dump.empty()) {
        dump_file.open(dump);
        if (!dump_file) throw std::runtime_error("cannot open " + dump);
    }
    json config = {{"mode", mode}, {"d", o.d}, {"rep", o.rep}, {"threads", o.threads}};
    std::vector<json> rows;
    bool mismatch = false;
    for (auto const & b : bounds) {
        Rat B = parse_rational(b);
        json row = {{"command", "count"}, {"mode", mode}, {"d", o.d}, {"rep", o.rep}, {"B", rat_string(B)}};
        std::set<ProjPoint> direct_pts, torsor_pts;
        bool keep = mode == "both" || !dump.empty();
        if (mode == "direct" || mode == "both") {
            PointSink sink;
            if (keep) sink = [&](ProjPoint const & p) { direct_pts.insert(p); };
            row["direct"] = enumerate_N_direct(ctx, B, o.threads, sink).get_str();
        }
        if (mode == "torsor" || mode == "both") {
            TorsorSink sink;
            if (keep) sink = [&](TorsorContext const &, Eta const & eta) { torsor_pts.insert(canonicalize(K, psi(K, eta))); };
            row["torsor"] = torsor_count_N(ctx, B, o.threads, sink).get_str();
        }
        if (mode == "both") {
            bool equal = row["direct"] == row["torsor"] && direct_pts == torsor_pts;
            row["equal"] = equal;
            if (!equal) {
                mismatch = true;
                for (auto const & p : direct_pts)
                    if (!torsor_pts.count(p)) {
                        row["first_mismatch"] = {{"point", str(p)}, {"only_in", "direct"}};
                        break;
                    }
                if (!row.contains("first_mismatch"))
                    for (auto const & p : torsor_pts)
                        if (!direct_pts.count(p)) {
                            row["first_mismatch"] = {{"point", str(p)}, {"only_in", "torsor"}};
                            break;
                        }
            }
        }
        if (dump_file) {
            auto const & pts = direct_pts.empty() ? torsor_pts : direct_pts;
            for (auto const & p : pts) dump_file << rat_string(B) << "\t" << str(p) << "\n";
        }
        rows.push_back(row);
    }
    emit(o, "count", config, rows);
    if (mismatch) throw crosscheck_failure("direct and torsor counts differ");
    return 0;
}

/* --- circle -------------------------------------------------------------- */

int cmd_circle(Options const & o, std::string const & a_text, std::string const & q_text,
               std::string const & alpha_text, std::vector<std::string> const & ts, double eps)
{
    FieldContext ctx = field(o);
    Field const & K = ctx.K;
    Ideal a = parse_ideal(K, a_text);
    Ideal q = parse_ideal(K, q_text);
    AlgNum alpha = parse_algnum(alpha_text);
    json config = {{"d", o.d}, {"a", a_text}, {"q", q_text}, {"alpha", alpha_text}, {"eps", eps}};
    std::vector<json> rows;
    bool violated = false;
    for (auto const & tt : ts) {
        Rat t = parse_rational(tt);
        json row = {{"command", "circle"}, {"d", o.d},       {"a", a_text},      {"q", q_text},
                    {"alpha", alg_string(alpha)}, {"eps", eps}, {"t", rat_string(t)}, {"Nq", q.norm().get_str()}};
        try {
            CountReport rep = qr_circle_report(K, {FracIdeal(a), q, alpha, t}, eps);
            row["exact"] = rep.exact.get_str();
            row["main"] = to_double(rep.main_term);
            row["error"] = to_double(rep.error);
            row["ratio"] = to_double(rep.ratio);
        } catch (hypothesis_error const & e) {
            violated = true;
            row["violation"] = e.what();
        }
        rows.push_back(row);
    }
    emit(o, "circle", config, rows);
    return violated ? 2 : 0;
}

/* --- expsum -------------------------------------------------------------- */

int cmd_expsum(Options const & o, std::string const & q_text, std::string const & w_text, bool units_only, double eps)
{
    FieldContext ctx = field(o);
    ExpSumQuery query{parse_ideal(ctx.K, q_text), parse_algnum(w_text), units_only};
    ExpSumReport rep = exp_sum_bound_report(ctx, query, eps);
    json config = {{"d", o.d}, {"q", q_text}, {"w", w_text}, {"units_only", units_only}, {"eps", eps}};
    json row = {{"command", "expsum"},
                {"d", o.d},
                {"q", q_text},
                {"q_hnf", str(query.q)},
                {"w", alg_string(query.w)},
                {"units_only", units_only},
                {"eps", eps},
                {"re", to_double(rep.value.real())},
                {"im", to_double(rep.value.imag())},
                {"gcd", str(rep.gcd)},
                {"bound", to_double(rep.bound)},
                {"ratio", to_double(rep.ratio)}};
    emit(o, "expsum", config, {row});
    return 0;
}

/* --- constants ----------------------------------------------------------- */

int cmd_constants(Options const & o, std::uint64_t seed, long budget, long cutoff, std::vector<std::string> const & predict)
{
    FieldContext ctx = field(o);
    ConstantReport rep = c_SH(ctx, seed, budget, cutoff, o.threads);
    json row;
    row["field"] = field_json(ctx);
    row["alpha"] = rat_string(rep.alpha);
    row["field_factor"] = {{"symbolic", rep.field.symbolic}, {"value", to_double(rep.field.value)}};
    row["euler"] = {{"value", to_double(rep.euler.value)},
                    {"digits", fmt_real(rep.euler.value, 20)},
                    {"cutoff", rep.euler.cutoff},
                    {"tail", rep.euler.tail},
                    {"interval", {to_double(rep.euler.lo), to_double(rep.euler.hi)}}};
    row["omega_inf"] = {{"value", rep.omega.value.value},
                        {"stderr", rep.omega.value.sigma},
                        {"seed", seed},
                        {"budget", budget},
                        {"plain", {{"value", rep.omega.plain.value}, {"stderr", rep.omega.plain.sigma}}},
                        {"slice", {{"value", rep.omega.slice.value}, {"stderr", rep.omega.slice.sigma}}},
                        {"z_score", rep.omega.z_score}};
    row["c_SH"] = {{"value", rep.c_SH}, {"sigma", rep.sigma}};
    if (!predict.empty()) {
        std::vector<Rat> bounds;
        for (auto const & b : predict) bounds.push_back(parse_rational(b));
        json table = json::array();
        for (auto const & r : prediction_table(ctx, rep, bounds, o.threads))
            table.push_back({{"B", rat_string(r.B)}, {"N", r.count.get_str()}, {"predicted", r.predicted}, {"ratio", r.ratio}});
        row["prediction"] = table;
    }
    if (o.format == "csv") {
        json flat = {{"command", "constants"},
                     {"d", o.d},
                     {"disc", ctx.K.disc()},
                     {"h", ctx.h},
                     {"w", ctx.K.unit_count()},
                     {"seed", seed},
                     {"budget", budget},
                     {"cutoff", cutoff},
                     {"alpha", rat_string(rep.alpha)},
                     {"field_factor", to_double(rep.field.value)},
                     {"euler", to_double(rep.euler.value)},
                     {"euler_tail", rep.euler.tail},
                     {"omega_inf", rep.omega.value.value},
                     {"omega_stderr", rep.omega.value.sigma},
                     {"c_SH", rep.c_SH},
                     {"c_SH_sigma", rep.sigma}};
        emit(o, "constants", {}, {flat});
    } else {
        json out = row;
        out["config"] = {{"d", o.d}, {"seed", seed}, {"budget", budget}, {"euler_cutoff", cutoff}, {"threads", o.threads}};
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

/* --- volumes ------------------------------------------------------------- */

int cmd_volumes(Options const & o, std::string const & kind, std::vector<std::string> const & bounds,
                std::vector<double> const & t, std::uint64_t seed, long budget)
{
    json config = {{"kind", kind}, {"seed", seed}, {"budget", budget}, {"t", t}, {"threads", o.threads}};
    std::vector<json> rows;
    bool failed = false;
    std::optional<Estimate> omega;
    for (auto const & b : bounds) {
        double B = to_double(parse_rational(b));
        json row = {{"command", "volumes"}, {"kind", kind}, {"B", b}, {"seed", seed}, {"budget", budget}};
        if (kind == "lemma61") {
            if (!omega) omega = omega_infinity(seed, budget, o.threads).value;
            Lemma61Report rep = lemma61_check(B, *omega, seed, budget, o.threads);
            row["omega_inf"] = rep.omega.value;
            row["omega_stderr"] = rep.omega.sigma;
            row["v0prime"] = rep.v0prime.value;
            row["v0prime_stderr"] = rep.v0prime.sigma;
            row["lhs"] = rep.lhs;
            row["rhs"] = rep.rhs;
            row["ratio"] = rep.ratio;
            row["sigma"] = rep.sigma;
            row["pass"] = rep.pass;
            failed = failed || !rep.pass;
        } else {
            VolumeKind k;
            if (kind == "V0") k = VolumeKind::V0;
            else if (kind == "V0prime") k = VolumeKind::V0prime;
            else if (kind == "V9") k = VolumeKind::V9;
            else k = VolumeKind::V98;
            Estimate e = region_volume(k, t, B, seed, budget, o.threads);
            row["t"] = t;
            row["value"] = e.value;
            row["stderr"] = e.sigma;
            if (k == VolumeKind::V9 || k == VolumeKind::V98) {
                if (k == VolumeKind::V9) {
                    std::array<double, 9> u{};
                    std::copy(t.begin(), t.end(), u.begin() + 1);
                    row["quadrature"] = v9(u, B);
                } else {
                    std::array<double, 8> u{};
                    std::copy(t.begin(), t.end(), u.begin() + 1);
                    row["quadrature"] = v98_quadrature(u, B);
                }
            }
        }
        rows.push_back(row);
    }
    emit(o, "volumes", config, rows);
    if (failed) throw crosscheck_failure("volume identity outside 3 sigma");
    return 0;
}

/* --- classgroup ---------------------------------------------------------- */

int cmd_classgroup(Options const & o)
{
    FieldContext ctx = field(o);
    json reps = json::array();
    for (auto const & I : ctx.class_reps) reps.push_back(str(I));
    json row = {{"command", "classgroup"}, {"d", o.d},  {"disc", ctx.K.disc()}, {"h", ctx.h},
                {"w", ctx.K.unit_count()},   {"rep", o.rep}, {"reps", reps},         {"different", str(ctx.different)}};
    emit(o, "classgroup", {{"d", o.d}, {"rep", o.rep}}, {row});
    return 0;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Point counts, lattice sums and volume constants for the E6 cubic surface over imaginary "
                 "quadratic fields"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App * sub) {
        sub->add_option("-d", o.d, "squarefree d < 0, K = Q(sqrt d)")->allow_extra_args(false);
        sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--rep", o.rep, "class representatives: forms or alternate")
            ->check(CLI::IsMember({"forms", "alternate"}));
    };

    std::string mode, dump;
    std::vector<std::string> bounds{"10"};
    auto * count = app.add_subcommand("count", "N_{U,H}(B) by direct search, through the torsor, or both");
    common(count);
    count->add_option("mode", mode, "direct, torsor or both")->required()->check(CLI::IsMember({"direct", "torsor", "both"}));
    count->add_option("-B", bounds, "height bounds")->delimiter(',');
    count->add_option("--dump-points", dump, "write the counted points to this file");

    std::string a_text = "1", q_text = "1", alpha_text = "1";
    std::vector<std::string> ts{"100", "1000", "10000", "100000", "1000000"};
    double eps_circle = 0.1;
    auto * circle = app.add_subcommand("circle", "quadratic-residue lattice point counts in discs");
    common(circle);
    circle->add_option("--a", a_text, "ideal a as generators, e.g. \"2,1+w\"");
    circle->add_option("--q", q_text, "modulus q as generators");
    circle->add_option("--alpha", alpha_text, "twist alpha");
    circle->add_option("-t", ts, "radii t (norm form)")->delimiter(',');
    circle->add_option("--eps", eps_circle, "exponent slack in the reference bound");

    std::string w_text = "0";
    bool units_only = false;
    double eps_sum = 0.05;
    auto * expsum = app.add_subcommand("expsum", "quadratic exponential sums modulo q");
    common(expsum);
    expsum->add_option("--q", q_text, "modulus q as generators");
    expsum->add_option("--w", w_text, "frequency w in (qD)^-1");
    expsum->add_flag("--units-only", units_only, "sum over invertible residues only");
    expsum->add_option("--eps", eps_sum, "exponent slack in the reference bound");

    std::uint64_t seed = 1;
    std::string budget_text = "1e6";
    long cutoff = 100000;
    std::vector<std::string> predict;
    auto * constants = app.add_subcommand("constants", "the leading constant and its factors");
    common(constants);
    constants->add_option("--seed", seed, "Monte-Carlo seed");
    constants->add_option("--budget", budget_text, "samples per estimator");
    constants->add_option("--euler-cutoff", cutoff, "largest prime-ideal norm in the Euler product");
    constants->add_option("--predict", predict, "also compare with torsor counts at these B")->delimiter(',');

    std::string kind = "V0prime";
    std::vector<std::string> vbounds{"100"};
    std::vector<double> tvals;
    auto * volumes = app.add_subcommand("volumes", "region volumes and the volume identity");
    common(volumes);
    volumes->add_option("--kind", kind, "V0, V0prime, V9, V98 or lemma61")
        ->check(CLI::IsMember({"V0", "V0prime", "V9", "V98", "lemma61"}));
    volumes->add_option("-B", vbounds, "height bounds")->delimiter(',');
    volumes->add_option("--t", tvals, "t1, t2, ... for V9 (8 values) and V98 (7 values)")->delimiter(',');
    volumes->add_option("--seed", seed, "Monte-Carlo seed");
    volumes->add_option("--budget", budget_text, "samples");

    auto * classgroup = app.add_subcommand("classgroup", "class number, units and class representatives");
    common(classgroup);

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        return app.exit(e);
    }

    try {
        if (!is_squarefree(o.d) || o.d >= 0) throw std::invalid_argument("d must be a squarefree negative integer");
        if (*count) return cmd_count(o, mode, bounds, dump);
        if (*circle) return cmd_circle(o, a_text, q_text, alpha_text, ts, eps_circle);
        if (*expsum) return cmd_expsum(o, q_text, w_text, units_only, eps_sum);
        if (*constants) return cmd_constants(o, seed, parse_count(budget_text), cutoff, predict);
        if (*volumes) return cmd_volumes(o, kind, vbounds, tvals, seed, parse_count(budget_text));
        if (*classgroup) return cmd_classgroup(o);
    } catch (hypothesis_error const & e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return 2;
    } catch (crosscheck_failure const & e) {
        std::cerr << "cross-check failed: " << e.what() << "\n";
        return 3;
    } catch (std::exception const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
