// qtwist: verification suites and the moment experiment, machine-readable output.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtwist/char_arith.hpp"
#include "qtwist/gauss.hpp"
#include "qtwist/lfunc.hpp"
#include "qtwist/moment.hpp"
#include "qtwist/numeric.hpp"
#include "qtwist/rep.hpp"

using json = nlohmann::json;
using namespace qtwist;

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        os = &file;
    }
    std::ostream& stream() { return *os; }
};

SatakeSystem make_rep(const std::string& label, int64_t prime_bound) {
    if (label == "delta") return SatakeSystem::delta(prime_bound);
    if (label == "unitary2") return SatakeSystem::unitary2(prime_bound);
    throw CLI::ValidationError("--rep", "unknown rep label: " + label);
}

// ---- verify-gauss -------------------------------------------------------

int run_verify_gauss(Output& out, const std::string& format, int64_t nmax, int64_t qmax,
                     double tol) {
    bool all_pass = true;
    json rows = json::array();
    if (format == "csv") out.stream() << "n,q,re_direct,im_direct,closed,abs_err\n";
    for (int64_t n = 1; n <= nmax; n += 2) {
        for (int64_t q = 1; q <= qmax; ++q) {
            GaussSumRecord rec = gauss_sum_record(n, q);
            bool ok = rec.abs_err <= tol * std::max(1.0, std::abs(rec.closed));
            all_pass = all_pass && ok;
            if (format == "csv") {
                out.stream() << rec.n << ',' << rec.q << ',' << fmt(rec.direct.real()) << ','
                             << fmt(rec.direct.imag()) << ',' << fmt(rec.closed) << ','
                             << fmt(rec.abs_err) << '\n';
            } else {
                rows.push_back({{"n", rec.n},
                                {"q", rec.q},
                                {"re_direct", rec.direct.real()},
                                {"im_direct", rec.direct.imag()},
                                {"closed", rec.closed},
                                {"abs_err", rec.abs_err}});
            }
        }
    }
    if (format == "json")
        out.stream() << json{{"rows", rows}, {"pass", all_pass}}.dump(2) << '\n';
    return all_pass ? 0 : 1;
}

// ---- verify-fe ----------------------------------------------------------

struct FeRow {
    std::string case_id;
    int64_t n_or_d;
    cplx s, lhs, rhs;
    double residual, bound;
    bool pass;
};

void emit_fe_rows(Output& out, const std::string& format, const std::vector<FeRow>& rows) {
    if (format == "csv") {
        out.stream()
            << "case_id,n_or_d,s_re,s_im,lhs_re,lhs_im,rhs_re,rhs_im,residual,bound,pass\n";
        for (const auto& r : rows)
            out.stream() << r.case_id << ',' << r.n_or_d << ',' << fmt(r.s.real()) << ','
                         << fmt(r.s.imag()) << ',' << fmt(r.lhs.real()) << ','
                         << fmt(r.lhs.imag()) << ',' << fmt(r.rhs.real()) << ','
                         << fmt(r.rhs.imag()) << ',' << fmt(r.residual) << ','
                         << fmt(r.bound) << ',' << (r.pass ? 1 : 0) << '\n';
    } else {
        json arr = json::array();
        bool all = true;
        for (const auto& r : rows) {
            all = all && r.pass;
            arr.push_back({{"case_id", r.case_id},
                           {"n_or_d", r.n_or_d},
                           {"s_re", r.s.real()},
                           {"s_im", r.s.imag()},
                           {"lhs_re", r.lhs.real()},
                           {"lhs_im", r.lhs.imag()},
                           {"rhs_re", r.rhs.real()},
                           {"rhs_im", r.rhs.imag()},
                           {"residual", r.residual},
                           {"bound", r.bound},
                           {"pass", r.pass}});
        }
        out.stream() << json{{"rows", arr}, {"pass", all}}.dump(2) << '\n';
    }
}

int run_verify_fe(Output& out, const std::string& format, const std::vector<int64_t>& d_list,
                  double tol) {
    const std::vector<cplx> s_points = {
        {-1.0, 0.0}, {0.25, 1.0}, {0.5, 2.7}, {2.0, 0.0}};
    std::vector<FeRow> rows;
    int idx = 0;
    bool all_pass = true;
    for (int64_t d : d_list) {
        for (cplx s : s_points) {
            FundamentalDiscriminant fd{d};
            cplx lhs = completed_lambda_quadratic(fd, s);
            cplx rhs = completed_lambda_quadratic(fd, 1.0 - s);
            double scale = std::max(std::abs(lhs), std::abs(rhs));
            double residual = std::abs(lhs - rhs) / std::max(scale, 1e-300);
            bool ok = residual <= tol;
            all_pass = all_pass && ok;
            rows.push_back({"fe-" + std::to_string(++idx), d, s, lhs, rhs, residual, tol, ok});
        }
    }
    emit_fe_rows(out, format, rows);
    return all_pass ? 0 : 1;
}

// ---- verify-cech --------------------------------------------------------

int run_verify_cech(Output& out, const std::string& format, const std::vector<int64_t>& n_list,
                    int64_t Q, double tol_scale) {
    const std::vector<cplx> s_points = {{-1.0, 0.0}, {-1.5, 0.0}};
    std::vector<FeRow> rows;
    int idx = 0;
    bool all_pass = true;
    for (int64_t n : n_list) {
        auto chi = QuadraticCharacterHandle::jacobi(n);
        for (cplx s : s_points) {
            cplx lhs = dirichlet_L(s, chi);
            cplx rhs = std::exp((s - 0.5) * std::log(std::numbers::pi)) *
                       std::exp(-s * std::log(static_cast<double>(n))) * gamma_ratio(s) *
                       k_series(1.0 - s, chi, Q).value;
            double residual = std::abs(lhs - rhs);
            double bound = tol_scale * std::max(1.0, std::abs(lhs));
            bool ok = residual <= bound;
            all_pass = all_pass && ok;
            rows.push_back({"cech-" + std::to_string(++idx), n, s, lhs, rhs, residual, bound, ok});
        }
    }
    emit_fe_rows(out, format, rows);
    return all_pass ? 0 : 1;
}

// ---- moment helpers -----------------------------------------------------

json report_to_json(const MomentReport& rpt) {
    json rows = json::array();
    for (const auto& r : rpt.rows)
        rows.push_back({{"X", r.X},
                        {"lhs", r.lhs},
                        {"main", r.main},
                        {"ratio", r.ratio},
                        {"trunc_est", r.trunc_est}});
    return json{{"rep", rpt.rep_label},
                {"alpha", rpt.alpha},
                {"weight", rpt.weight},
                {"K", rpt.K},
                {"extrapolated", rpt.extrapolated},
                {"rows", rows},
                {"fitted_exponent", rpt.fitted_exponent},
                {"noise_limited", rpt.noise_limited},
                {"pass", rpt.pass}};
}

void emit_rows_csv(Output& out, const std::vector<MomentRow>& rows) {
    out.stream() << "X,lhs,main,ratio,trunc_est\n";
    for (const auto& r : rows)
        out.stream() << fmt(r.X) << ',' << fmt(r.lhs) << ',' << fmt(r.main) << ','
                     << fmt(r.ratio) << ',' << fmt(r.trunc_est) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic-twist L-function toolkit"};
    app.require_subcommand(1);

    int default_workers = 1;
    if (const char* env = std::getenv("QTWIST_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) default_workers = w;
    }

    std::string out_path, format = "csv", rep_label = "delta";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    // verify-gauss
    int64_t nmax = 315, qmax = 315;
    double gauss_tol = 1e-9;
    auto* sc_gauss = app.add_subcommand("verify-gauss", "closed form vs direct Gauss sums");
    sc_gauss->add_option("--nmax", nmax, "largest odd modulus");
    sc_gauss->add_option("--qmax", qmax, "largest shift q");
    sc_gauss->add_option("--tol", gauss_tol, "relative tolerance");
    add_common(sc_gauss);

    // verify-fe
    std::vector<int64_t> d_list = {5, 8, 12, 13, -3, -4, -7, -8};
    double fe_tol = 1e-7;
    auto* sc_fe = app.add_subcommand("verify-fe", "completed quadratic functional equation");
    sc_fe->add_option("--d", d_list, "fundamental discriminants");
    sc_fe->add_option("--tol", fe_tol, "relative tolerance");
    add_common(sc_fe);

    // verify-cech
    std::vector<int64_t> cech_n = {5, 13, 17, 21, 45};
    int64_t cech_Q = 1000000;
    double cech_tol = 2e-4;
    auto* sc_cech = app.add_subcommand("verify-cech", "Gauss-sum functional equation");
    sc_cech->add_option("--n", cech_n, "odd non-square moduli, 1 mod 4");
    sc_cech->add_option("--Q", cech_Q, "K-series truncation");
    sc_cech->add_option("--tol", cech_tol, "tolerance scale");
    add_common(sc_cech);

    // coeff
    int64_t coeff_n = 1, coeff_nmax = 0;
    auto* sc_coeff = app.add_subcommand("coeff", "Dirichlet-inverse coefficients a(n)");
    sc_coeff->add_option("--rep", rep_label, "rep label")
        ->check(CLI::IsMember({"delta", "unitary2"}));
    sc_coeff->add_option("--n", coeff_n, "single index");
    sc_coeff->add_option("--nmax", coeff_nmax, "dump a(1..nmax) as CSV");
    add_common(sc_coeff);

    // euler-product
    double ep_z = 1.0;
    int64_t ep_pmax = 100000;
    auto* sc_ep = app.add_subcommand("euler-product", "P(z) truncated Euler product");
    sc_ep->add_option("--rep", rep_label, "rep label")
        ->check(CLI::IsMember({"delta", "unitary2"}));
    sc_ep->add_option("--z", ep_z, "real argument, > 1/2");
    sc_ep->add_option("--pmax", ep_pmax, "prime truncation");
    add_common(sc_ep);

    // residue-check
    double rc_z = 1.0, rc_tol = 1e-5;
    int64_t rc_mmax = 1000000;
    auto* sc_rc = app.add_subcommand("residue-check", "residue identity sum vs P(z)");
    sc_rc->add_option("--rep", rep_label, "rep label")
        ->check(CLI::IsMember({"delta", "unitary2"}));
    sc_rc->add_option("--z", rc_z, "real argument, >= 1");
    sc_rc->add_option("--mmax", rc_mmax, "sum truncation");
    sc_rc->add_option("--tol", rc_tol, "deviation tolerance");
    add_common(sc_rc);

    // moment / sweep
    double mo_alpha = 0.5, mo_x = 1e4, mo_tol = -1.0;
    int64_t mo_k = 30000;
    std::string mo_weight = "gaussian";
    int workers = default_workers;
    bool no_smoothing = false;
    std::vector<double> sweep_x = {1e3, 3e3, 1e4, 3e4};

    auto* sc_mo = app.add_subcommand("moment", "single-X moment experiment");
    sc_mo->add_option("--rep", rep_label, "rep label")
        ->check(CLI::IsMember({"delta", "unitary2"}));
    sc_mo->add_option("--alpha", mo_alpha, "shift alpha > 0");
    sc_mo->add_option("--x", mo_x, "scale X");
    sc_mo->add_option("--k", mo_k, "coefficient truncation K");
    sc_mo->add_option("--weight", mo_weight, "weight kind")
        ->check(CLI::IsMember({"gaussian", "bump"}));
    sc_mo->add_option("--workers", workers, "worker threads");
    sc_mo->add_flag("--no-smoothing", no_smoothing, "disable the series smoothing");
    sc_mo->add_option("--tol", mo_tol, "if set, require |ratio - 1| <= tol");
    add_common(sc_mo);

    auto* sc_sw = app.add_subcommand("sweep", "X-sweep with fitted error exponent");
    sc_sw->add_option("--rep", rep_label, "rep label")
        ->check(CLI::IsMember({"delta", "unitary2"}));
    sc_sw->add_option("--alpha", mo_alpha, "shift alpha > 0");
    sc_sw->add_option("--x-list", sweep_x, "increasing X values (>= 3)");
    sc_sw->add_option("--k", mo_k, "coefficient truncation K");
    sc_sw->add_option("--weight", mo_weight, "weight kind")
        ->check(CLI::IsMember({"gaussian", "bump"}));
    sc_sw->add_option("--workers", workers, "worker threads");
    add_common(sc_sw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Output out;
    try {
        out.open(out_path);

        if (sc_gauss->parsed())
            return run_verify_gauss(out, format, nmax, qmax, gauss_tol);

        if (sc_fe->parsed()) return run_verify_fe(out, format, d_list, fe_tol);

        if (sc_cech->parsed())
            return run_verify_cech(out, format, cech_n, cech_Q, cech_tol);

        if (sc_coeff->parsed()) {
            if (coeff_nmax > 0) {
                SatakeSystem rep = make_rep(rep_label, coeff_nmax);
                CoefficientSeries series(rep, coeff_nmax);
                if (format == "csv") {
                    out.stream() << "n,a\n";
                    for (int64_t n = 1; n <= coeff_nmax; ++n)
                        out.stream() << n << ',' << fmt(series.at(n)) << '\n';
                } else {
                    json arr = json::array();
                    for (int64_t n = 1; n <= coeff_nmax; ++n)
                        arr.push_back({{"n", n}, {"a", series.at(n)}});
                    out.stream() << json{{"rep", rep_label}, {"rows", arr}}.dump(2) << '\n';
                }
            } else {
                SatakeSystem rep = make_rep(rep_label, std::max<int64_t>(coeff_n, 2));
                out.stream() << fmt(coeff(rep, coeff_n)) << '\n';
            }
            return 0;
        }

        if (sc_ep->parsed()) {
            SatakeSystem rep = make_rep(rep_label, ep_pmax);
            EulerProductResult r = euler_product_P(rep, ep_z, ep_pmax);
            if (format == "csv") {
                out.stream() << "z,pmax,value,tail_bound\n"
                             << fmt(ep_z) << ',' << ep_pmax << ',' << fmt(r.value) << ','
                             << fmt(r.tail_bound) << '\n';
            } else {
                out.stream() << json{{"rep", rep_label},
                                     {"z", ep_z},
                                     {"pmax", ep_pmax},
                                     {"value", r.value},
                                     {"tail_bound", r.tail_bound}}
                                    .dump(2)
                             << '\n';
            }
            return 0;
        }

        if (sc_rc->parsed()) {
            SatakeSystem rep = make_rep(rep_label, std::max<int64_t>(rc_mmax, 200000));
            ResidueCheckResult r = residue_identity_check(rep, rc_z, rc_mmax);
            bool ok = r.deviation <= rc_tol;
            if (format == "csv") {
                out.stream() << "z,mmax,sum,product,deviation,tail_est,pass\n"
                             << fmt(rc_z) << ',' << rc_mmax << ',' << fmt(r.sum_value) << ','
                             << fmt(r.product_value) << ',' << fmt(r.deviation) << ','
                             << fmt(r.tail_estimate) << ',' << (ok ? 1 : 0) << '\n';
            } else {
                out.stream() << json{{"rep", rep_label},
                                     {"z", rc_z},
                                     {"mmax", rc_mmax},
                                     {"sum", r.sum_value},
                                     {"product", r.product_value},
                                     {"deviation", r.deviation},
                                     {"tail_est", r.tail_estimate},
                                     {"pass", ok}}
                                    .dump(2)
                             << '\n';
            }
            return ok ? 0 : 1;
        }

        if (sc_mo->parsed() || sc_sw->parsed()) {
            WeightSpec weight;
            weight.kind =
                mo_weight == "gaussian" ? WeightSpec::Kind::gaussian : WeightSpec::Kind::bump;
            std::vector<double> xs = sc_mo->parsed() ? std::vector<double>{mo_x} : sweep_x;
            int64_t prime_bound = (no_smoothing ? 2 : 12) * mo_k;
            // floor keeps the main-term Euler product well converged
            SatakeSystem rep = make_rep(rep_label, std::max<int64_t>(prime_bound, 100000));

            if (sc_mo->parsed()) {
                MomentConfig cfg;
                cfg.alpha = mo_alpha;
                cfg.X = mo_x;
                cfg.K = mo_k;
                cfg.weight = weight;
                cfg.smoothing = !no_smoothing;
                cfg.workers = workers;
                MomentLhsResult r = moment_lhs(rep, cfg);
                double main = moment_main_term(rep, mo_alpha, mo_x, weight);
                double ratio = r.lhs / main;
                bool ok = mo_tol < 0.0 || std::abs(ratio - 1.0) <= mo_tol;
                MomentRow row{mo_x, r.lhs, main, ratio, r.trunc_estimate};
                if (format == "csv") {
                    emit_rows_csv(out, {row});
                } else {
                    MomentReport rpt;
                    rpt.rep_label = rep_label;
                    rpt.alpha = mo_alpha;
                    rpt.weight = weight.name();
                    rpt.K = mo_k;
                    rpt.extrapolated = mo_alpha < 0.5;
                    rpt.rows = {row};
                    rpt.noise_limited = false;
                    rpt.pass = ok;
                    out.stream() << report_to_json(rpt).dump(2) << '\n';
                }
                return ok ? 0 : 1;
            }

            MomentReport rpt = moment_report(rep, mo_alpha, xs, mo_k, weight, workers);
            if (format == "csv")
                emit_rows_csv(out, rpt.rows);
            else
                out.stream() << report_to_json(rpt).dump(2) << '\n';
            return rpt.pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
