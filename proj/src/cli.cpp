#include "gkz/cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <random>
#include <sstream>

#include "gkz/format.hpp"
#include "gkz/oscillator.hpp"
#include "gkz/problem.hpp"
#include "gkz/verify.hpp"
#include "gkz/whittaker.hpp"

namespace gkz {

namespace {

std::string lattice_output(const ProblemFile& pf) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < pf.data.M.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < pf.data.M.cols(); ++j)
            os << (j ? "," : "") << pf.data.M(i, j);
        os << "]";
    }
    os << "]\n";
    return os.str();
}

std::string eval_output(const ProblemFile& pf, int points_override, double tol_override) {
    QuadratureConfig cfg = pf.quadrature;
    if (points_override > 0) cfg.points_per_dim = points_override;
    if (tol_override > 0.0) cfg.tail_tolerance = tol_override;
    EvalResult r = evaluate_gg(pf.data, pf.gamma, pf.u, cfg);
    return "{\"value\":" + format_complex_pair(r.value) +
           ",\"err\":" + format_double(r.err_estimate) + "}\n";
}

std::string verify_output(const ProblemFile& pf, double step) {
    std::vector<ResidualReport> reports = verify_all(pf.data, pf.gamma, pf.u, step, pf.quadrature);
    std::string out = "[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) out += ",\n ";
        out += reports[i].to_json();
    }
    out += "]\n";
    return out;
}

std::vector<double> parse_lambda_list(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("whittaker: empty --lambda component");
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size())
            throw std::invalid_argument("whittaker: bad --lambda component \"" + tok + "\"");
        vals.push_back(v);
    }
    if (vals.empty()) throw std::invalid_argument("whittaker: --lambda needs at least one value");
    return vals;
}

std::vector<double> parse_grid(const std::string& text) {
    std::stringstream ss(text);
    std::string lo_s, hi_s, n_s;
    if (!std::getline(ss, lo_s, ':') || !std::getline(ss, hi_s, ':') ||
        !std::getline(ss, n_s, ':') || ss.rdbuf()->in_avail() > 0)
        throw std::invalid_argument("whittaker: --grid must look like lo:hi:n");
    double lo = 0, hi = 0;
    long n = 0;
    try {
        std::size_t u1 = 0, u2 = 0, u3 = 0;
        lo = std::stod(lo_s, &u1);
        hi = std::stod(hi_s, &u2);
        n = std::stol(n_s, &u3);
        if (u1 != lo_s.size() || u2 != hi_s.size() || u3 != n_s.size())
            throw std::invalid_argument("bad component");
    } catch (const std::exception&) {
        throw std::invalid_argument("whittaker: --grid must look like lo:hi:n with numbers");
    }
    if (n < 2) throw std::invalid_argument("whittaker: grid needs at least 2 points (use --x for one)");
    if (!(lo < hi))
        throw std::invalid_argument("whittaker: grid must be strictly increasing (lo < hi)");
    std::vector<double> xs(n);
    for (long k = 0; k < n; ++k) xs[k] = lo + (hi - lo) * static_cast<double>(k) / (n - 1);
    return xs;
}

std::string whittaker_output(const std::string& type, long rank,
                             const std::vector<double>& lambda_in, const std::vector<double>& xs) {
    if (rank < 1) throw std::invalid_argument("whittaker: --rank must be at least 1");
    const auto ell = static_cast<std::size_t>(rank);
    if (lambda_in.size() != ell + 1)
        throw std::invalid_argument("whittaker: --lambda needs rank+1 values");
    std::vector<Complex> lambda(lambda_in.begin(), lambda_in.end());

    std::string out = "x,re,im,err\n";
    for (double x : xs) {
        EvalResult r;
        if (type == "min") {
            std::vector<double> xvec(ell + 1, 0.0);
            xvec[0] = x;
            r = eval_whittaker_min(ell, lambda, xvec);
        } else {
            r = eval_whittaker_max(ell, lambda, x);
        }
        out += format_double(x) + "," + format_double(r.value.real()) + "," +
               format_double(r.value.imag()) + "," + format_double(r.err_estimate) + "\n";
    }
    return out;
}

std::string weyl_check_output(long nvars, long lmax, bool symbolic) {
    if (nvars < 1 || nvars > 6)
        throw std::invalid_argument("weyl-check: --n must lie in [1,6]");
    if (lmax < 0 || lmax > 6)
        throw std::invalid_argument("weyl-check: --lmax must lie in [0,6]");
    const auto n = static_cast<std::size_t>(nvars);

    // Deterministic rational spectra for the numeric certificates.
    std::vector<SpectralAssignment> assignments;
    if (symbolic) {
        assignments.push_back(SpectralAssignment::formal(n));
    } else {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<int> num(-9, 9);
        std::uniform_int_distribution<int> den(1, 7);
        for (int s = 0; s < 5; ++s) {
            std::vector<Rat> vals(n);
            for (std::size_t i = 0; i < n; ++i) vals[i] = Rat(num(rng), den(rng));
            assignments.push_back(SpectralAssignment::numeric(vals));
        }
    }

    std::string out = "[";
    std::vector<long long> l(n, -lmax);
    bool first = true;
    while (true) {
        bool ok = true;
        for (const auto& g : assignments)
            if (!verify_annihilation(l, g)) { ok = false; break; }
        out += first ? "" : ",\n ";
        first = false;
        out += "{\"l\":[";
        for (std::size_t i = 0; i < n; ++i)
            out += (i ? "," : "") + std::to_string(l[i]);
        out += "],\"N\":" + std::to_string(n) + ",\"annihilated\":";
        out += ok ? "true" : "false";
        out += "}";
        // odometer, last coordinate fastest
        std::size_t i = n;
        while (i > 0 && l[i - 1] == lmax) l[--i] = -lmax;
        if (i == 0) break;
        ++l[i - 1];
    }
    out += "]\n";
    return out;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"GKZ / Gelfand-Graev hypergeometric toolkit"};
    app.require_subcommand(1);

    std::string lat_file;
    auto* lat = app.add_subcommand("lattice", "print the relation lattice basis of a problem file");
    lat->add_option("file", lat_file, "problem JSON file")->required();

    std::string ev_file;
    int ev_points = 0;
    double ev_tol = 0.0;
    auto* ev = app.add_subcommand("eval", "evaluate the GG function of a problem file");
    ev->add_option("file", ev_file, "problem JSON file")->required();
    ev->add_option("--points-per-dim", ev_points, "override quadrature points per axis");
    ev->add_option("--tol", ev_tol, "override quadrature tail tolerance");

    std::string vf_file;
    double vf_step = 1e-3;
    auto* vf = app.add_subcommand("verify", "finite-difference residuals of the GG system");
    vf->add_option("file", vf_file, "problem JSON file")->required();
    vf->add_option("--step", vf_step, "finite-difference step (default 1e-3)");

    std::string wh_type, wh_lambda, wh_grid;
    long wh_rank = 0;
    double wh_x = 0.0;
    auto* wh = app.add_subcommand("whittaker", "evaluate Whittaker profiles on a grid");
    wh->add_option("--type", wh_type, "profile family: min or max")->required();
    wh->add_option("--rank", wh_rank, "rank (ell)")->required();
    wh->add_option("--lambda", wh_lambda, "comma-separated spectral values (rank+1 of them)")
        ->required();
    auto* wh_x_opt = wh->add_option("--x", wh_x, "single evaluation point");
    auto* wh_grid_opt = wh->add_option("--grid", wh_grid, "evaluation grid lo:hi:n");

    long wc_n = 0, wc_lmax = 0;
    bool wc_symbolic = false;
    auto* wc = app.add_subcommand("weyl-check", "annihilation certificates for integer vectors");
    wc->add_option("--n", wc_n, "number of variables")->required();
    wc->add_option("--lmax", wc_lmax, "max absolute entry of the integer vectors")->required();
    wc->add_flag("--symbolic", wc_symbolic, "certify with formal spectral symbols");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("gkz");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        std::string payload;
        if (*lat) {
            payload = lattice_output(load_problem_file(lat_file));
        } else if (*ev) {
            payload = eval_output(load_problem_file(ev_file), ev_points, ev_tol);
        } else if (*vf) {
            payload = verify_output(load_problem_file(vf_file), vf_step);
        } else if (*wh) {
            if (wh_type != "min" && wh_type != "max")
                throw std::invalid_argument("whittaker: --type must be min or max");
            if ((wh_x_opt->count() > 0) == (wh_grid_opt->count() > 0))
                throw std::invalid_argument("whittaker: exactly one of --x and --grid is required");
            std::vector<double> xs =
                wh_x_opt->count() > 0 ? std::vector<double>{wh_x} : parse_grid(wh_grid);
            payload = whittaker_output(wh_type, wh_rank, parse_lambda_list(wh_lambda), xs);
        } else if (*wc) {
            payload = weyl_check_output(wc_n, wc_lmax, wc_symbolic);
        }
        out << payload;
        return 0;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace gkz
