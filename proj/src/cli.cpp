#include "lozi/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>

#include "lozi/cone.hpp"
#include "lozi/dld.hpp"
#include "lozi/errors.hpp"
#include "lozi/map.hpp"
#include "lozi/report.hpp"
#include "lozi/strips.hpp"
#include "lozi/symbolic.hpp"

namespace lozi::cli {

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

MapParams map_params(const RunConfig& c) {
    if (!(c.epsilon >= 0.0)) throw UsageError("--epsilon must be >= 0");
    MapParams p{c.a, c.epsilon};
    validate(p);
    return p;
}

int run_verify(const RunConfig& c, std::ostream& out) {
    const MapParams params = map_params(c);
    if (c.n_lo > c.n_hi) throw UsageError("--n-range needs lo <= hi");
    std::vector<Report> sections;

    std::vector<Report> a1;
    for (long n = c.n_lo; n <= c.n_hi; ++n) a1.push_back(verify_assumption1(params, n));
    sections.push_back(merge_reports(a1));

    sections.push_back(contraction_audit(params.a, c.audit_strips, c.seed).report);

    Report tm;
    tm.section = "transition";
    if (params.a > 4.0) {
        double min_area = std::numeric_limits<double>::infinity();
        std::optional<long> bad;
        for (long n = c.n_lo; n <= c.n_hi; ++n) {
            const TransitionMatrix t = transition_matrix(params, n);
            for (const auto& row : t.overlap_area)
                for (double v : row) min_area = std::min(min_area, v);
            if (!t.all_ones() && !bad) bad = n;
        }
        CheckResult r = margin_check("all_ones", min_area);
        r.status = bad ? CheckStatus::fail : CheckStatus::pass;
        if (bad) r.witness_n = bad;
        tm.add(r);
    } else {
        CheckResult r;
        r.name = "gate";
        r.status = CheckStatus::not_applicable;
        r.margin = params.a - 4.0;
        r.note = "requires_a_gt_4";
        tm.add(r);
    }
    sections.push_back(tm);

    sections.push_back(verify_A3(params, c.n_lo, c.n_hi, c.samples, c.seed, c.workers).report);

    bool ok = true;
    for (const Report& r : sections) {
        write_report(out, r);
        ok = ok && r.passed();
    }
    out << "verify.result=" << (ok ? "pass" : "fail") << '\n';
    return ok ? kExitOk : kExitFailure;
}

int run_dld(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const MapParams params = map_params(c);
    DLDParams dld{c.p, c.N, c.n0};
    try {
        dld.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const double R = domain_R_unchecked(params.a);
    GridSpec grid;
    try {
        grid = GridSpec::from_spacing(c.x_min.value_or(-R), c.x_max.value_or(R), c.y_min.value_or(-R),
                                      c.y_max.value_or(R), c.spacing);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (c.format == OutputFormat::pgm && c.output.empty()) throw UsageError("--format pgm needs --output");

    const ScalarField field = dld_field(params, grid, dld, c.workers);
    if (c.format == OutputFormat::csv) {
        if (c.output.empty()) {
            write_csv(out, field);
        } else {
            std::ofstream f(c.output, std::ios::binary);
            if (!f) throw std::runtime_error("cannot open " + c.output);
            write_csv(f, field);
        }
    } else {
        std::ofstream f(c.output, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + c.output);
        const PgmNormalization norm = write_pgm(f, field);
        std::ofstream side(c.output + ".norm.txt");
        if (!side) throw std::runtime_error("cannot open " + c.output + ".norm.txt");
        write_pgm_sidecar(side, field, norm);
    }
    err << "dld: " << grid.nx << "x" << grid.ny << " nodes, " << field.escaped_count() << " escaped\n";
    return kExitOk;
}

int run_orbit(const RunConfig& c, std::ostream& out) {
    const MapParams params = map_params(c);
    if (c.forward_steps < 0 || c.backward_steps < 0) throw UsageError("step counts must be >= 0");
    const Square S = domain_square_unchecked(params);
    const OrbitSegment orb = orbit(params, {c.x, c.y}, c.n0, c.forward_steps, c.backward_steps);
    out << "step,x,y,symbol\n";
    for (long k = orb.first_step(); k <= orb.last_step(); ++k) {
        const Point z = orb.at(k);
        const char* symbol = !S.contains(z) ? "-" : z.x < 0.0 ? "1" : z.x > 0.0 ? "2" : "0";
        out << k << ',' << fmt("%.17g", z.x) << ',' << fmt("%.17g", z.y) << ',' << symbol << '\n';
    }
    return orb.escaped() ? kExitFailure : kExitOk;
}

int run_periodic(const RunConfig& c, std::ostream& out) {
    const MapParams params = map_params(c);
    if (c.word.empty()) throw UsageError("--word is required");
    std::vector<std::uint8_t> word;
    try {
        word = parse_word(c.word);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
    const Point z = periodic_point(params, word, c.tol);
    out << fmt("%.12g", z.x) << ' ' << fmt("%.12g", z.y) << '\n';
    return kExitOk;
}

int run_strips(const RunConfig& c, std::ostream& out) {
    const MapParams params = map_params(c);
    if (c.n_lo > c.n_hi) throw UsageError("--n-range needs lo <= hi");
    const Square S = domain_square(params);
    out << "n,strip_id,curve_id,vertex_index,x,y\n";
    for (long n = c.n_lo; n <= c.n_hi; ++n) {
        const StripFamily f = build_strips(params, n, S);
        const std::pair<const char*, const Strip*> strips[] = {{"V1", &f.V1}, {"V2", &f.V2}, {"H1", &f.H1}, {"H2", &f.H2}};
        for (const auto& [id, s] : strips) {
            const std::pair<const char*, const PolylineCurve*> curves[] = {{"lower", &s->lower}, {"upper", &s->upper}};
            for (const auto& [cid, curve] : curves) {
                std::size_t k = 0;
                for (const Point& p : curve->breakpoints())
                    out << n << ',' << id << ',' << cid << ',' << k++ << ',' << fmt("%.9g", p.x) << ','
                        << fmt("%.9g", p.y) << '\n';
            }
        }
    }
    return kExitOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.subcommand) {
            case Subcommand::verify: return run_verify(config, out);
            case Subcommand::dld: return run_dld(config, out, err);
            case Subcommand::orbit: return run_orbit(config, out);
            case Subcommand::periodic: return run_periodic(config, out);
            case Subcommand::strips: return run_strips(config, out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParameterError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lozi map chaotic saddle toolkit", "lozi"};
    app.require_subcommand(1);
    RunConfig c;
    std::vector<long> n_range;

    auto add_map = [&](CLI::App* sub) {
        sub->add_option("--a", c.a, "base parameter a");
        sub->add_option("--epsilon", c.epsilon, "amplitude of a(n) = a + epsilon (1 + cos n)");
    };

    auto* verify = app.add_subcommand("verify", "check the strip, contraction and cone conditions");
    add_map(verify);
    verify->add_option("--n-range", n_range, "time range lo hi")->expected(2)->allow_extra_args(false);
    verify->add_option("--samples", c.samples, "cone samples per n");
    verify->add_option("--audit-strips", c.audit_strips, "random sub-strips in the contraction audit");
    verify->add_option("--seed", c.seed);
    verify->add_option("--workers", c.workers);

    auto* dld = app.add_subcommand("dld", "evaluate the discrete Lagrangian descriptor on a grid");
    add_map(dld);
    dld->add_option("--p", c.p, "exponent in (0, 1]");
    dld->add_option("--N", c.N, "half orbit length");
    dld->add_option("--n0", c.n0, "initial time");
    dld->add_option("--spacing", c.spacing, "grid spacing");
    dld->add_option("--x-min", c.x_min);
    dld->add_option("--x-max", c.x_max);
    dld->add_option("--y-min", c.y_min);
    dld->add_option("--y-max", c.y_max);
    dld->add_option("--format", c.format, "csv or pgm")
        ->transform(CLI::CheckedTransformer(std::map<std::string, OutputFormat>{{"csv", OutputFormat::csv},
                                                                                 {"pgm", OutputFormat::pgm}}));
    dld->add_option("--output", c.output, "output file (csv defaults to stdout)");
    dld->add_option("--workers", c.workers);

    auto* orb = app.add_subcommand("orbit", "print an orbit and its itinerary as CSV");
    add_map(orb);
    orb->add_option("--x", c.x);
    orb->add_option("--y", c.y);
    orb->add_option("--n0", c.n0);
    orb->add_option("--forward", c.forward_steps);
    orb->add_option("--backward", c.backward_steps);

    auto* per = app.add_subcommand("periodic", "periodic point with a given repeating itinerary");
    add_map(per);
    per->add_option("--word", c.word, "word over {1,2}, e.g. 12")->required();
    per->add_option("--tol", c.tol);

    auto* strips = app.add_subcommand("strips", "dump the strip boundary polylines as CSV");
    add_map(strips);
    strips->add_option("--n-range", n_range, "time range lo hi")->expected(2);

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*verify) c.subcommand = Subcommand::verify;
    else if (*dld) c.subcommand = Subcommand::dld;
    else if (*orb) c.subcommand = Subcommand::orbit;
    else if (*per) c.subcommand = Subcommand::periodic;
    else c.subcommand = Subcommand::strips;
    if (n_range.size() == 2) {
        c.n_lo = n_range[0];
        c.n_hi = n_range[1];
    } else {
        c.n_lo = c.n_hi = c.n0;
    }
    return run(c, out, err);
}

}  // namespace lozi::cli
