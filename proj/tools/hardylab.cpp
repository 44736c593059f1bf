// hardylab command-line front end: sharp-constant lookup, verification
// suites over seeded corpora, and parameter sweeps for the optimality limits.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hardylab/suites.hpp"

namespace {

using namespace hardylab;

int exit_code_inadmissible() { return 2; }

std::uint64_t default_seed() {
    if (const char* env = std::getenv("HARDYLAB_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return static_cast<std::uint64_t>(v);
    }
    return 12345;
}

struct ParamFlags {
    int N = 3;
    double p = 2.0;
    double alpha = 0.0;
    double beta = 2.0;
    double gamma = 1.0;
    double R = 1.0;
    int k = 2;
    std::string form = "improved-hardy";

    InequalityParams build_unchecked() const {
        auto f = form_from_name(form);
        if (!f) throw AdmissibilityError("unknown form '" + form + "'");
        InequalityParams q;
        q.form = *f;
        q.N = N;
        q.p = p;
        q.alpha = alpha;
        q.beta = beta;
        q.gamma = gamma;
        q.R = R;
        q.k = k;
        return q;
    }

    void add_to(CLI::App* cmd) {
        cmd->add_option("--form", form, "inequality form tag");
        cmd->add_option("-N,--dim", N, "space dimension N");
        cmd->add_option("-p,--exponent", p, "integrability exponent p");
        cmd->add_option("--alpha", alpha, "interior weight power alpha");
        cmd->add_option("--beta", beta, "boundary weight power beta");
        cmd->add_option("--gamma", gamma, "profile exponent gamma");
        cmd->add_option("-R,--radius", R, "ball radius R");
        cmd->add_option("-k,--order", k, "derivative order k");
    }
};

int cmd_constant(const ParamFlags& pf, double q_exp, bool use_trad) {
    if (use_trad) {
        const double val = t_rad_constant(pf.N, pf.p, q_exp, pf.alpha);
        std::printf("constant        t_rad\n");
        std::printf("parameters      N=%d p=%.17g q=%.17g alpha=%.17g\n", pf.N, pf.p, q_exp,
                    pf.alpha);
        std::printf("admissible      yes\n");
        std::printf("sharp constant  %.12g\n", val);
        return 0;
    }
    InequalityParams q = pf.build_unchecked();
    std::printf("form            %s\n", form_name(q.form).c_str());
    std::printf("parameters      N=%d p=%g alpha=%g beta=%g gamma=%g R=%g k=%d\n", q.N, q.p,
                q.alpha, q.beta, q.gamma, q.R, q.k);
    std::printf("hypotheses\n");
    bool ok = true;
    for (const auto& h : q.hypotheses()) {
        std::printf("  [%s] %s\n", h.holds ? "ok" : "VIOLATED", h.text.c_str());
        ok = ok && h.holds;
    }
    std::printf("admissible      %s\n", ok ? "yes" : "no");
    if (!ok) {
        for (const auto& h : q.hypotheses())
            if (!h.holds) std::fprintf(stderr, "error: %s required\n", h.text.c_str());
        return exit_code_inadmissible();
    }
    std::printf("sharp constant  %.12g\n", sharp_constant(q));
    return 0;
}

void write_csv(std::ostream& os, const std::vector<SuiteReport>& reports) {
    os << "case,form,N,p,alpha,beta,gamma,R,k,pass,result\n";
    for (const auto& rep : reports) {
        for (const auto& c : rep.cases) {
            auto field = [&](const char* name) -> std::string {
                if (c.params.contains(name)) {
                    const auto& v = c.params[name];
                    return v.is_string() ? v.get<std::string>() : v.dump();
                }
                return "";
            };
            std::string detail = c.result.dump();
            for (auto& ch : detail)
                if (ch == ',') ch = ';';
            os << c.key << ',' << field("form") << ',' << field("N") << ',' << field("p") << ','
               << field("alpha") << ',' << field("beta") << ',' << field("gamma") << ','
               << field("R") << ',' << field("k") << ',' << (c.pass ? "1" : "0") << ',' << detail
               << "\n";
        }
    }
}

int cmd_verify(const std::string& suite, const SuiteOptions& opt, const std::string& out_path,
               const std::string& format) {
    std::vector<SuiteReport> reports;
    if (suite == "all") {
        reports = run_all_suites(opt);
    } else {
        reports.push_back(run_suite(suite, opt));
    }

    bool all_pass = true;
    for (const auto& rep : reports) {
        std::printf("suite %-14s %3d/%3zu cases pass\n", rep.suite.c_str(), rep.passed(),
                    rep.cases.size());
        all_pass = all_pass && rep.all_pass();
        for (const auto& c : rep.cases)
            if (!c.pass)
                std::printf("  FAIL %s params=%s result=%s\n", c.key.c_str(),
                            c.params.dump().c_str(), c.result.dump().c_str());
    }

    if (!out_path.empty()) {
        std::ofstream os(out_path, std::ios::binary);
        if (!os) {
            std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
            return exit_code_inadmissible();
        }
        if (format == "csv") {
            write_csv(os, reports);
        } else {
            json j;
            if (reports.size() == 1) {
                j = reports.front().to_json();
            } else {
                j["schema"] = "hardylab/1";
                j["seed"] = opt.seed;
                json arr = json::array();
                for (const auto& rep : reports) arr.push_back(rep.to_json());
                j["suites"] = arr;
            }
            os << j.dump(2) << "\n";
        }
    }
    return all_pass ? 0 : 1;
}

int cmd_verify_el(double gamma, int N, int mesh_n) {
    std::printf("%-10s %-14s %-14s\n", "eps", "lambda1", "concentration");
    double prev = inf();
    bool decreasing = true, above = true;
    const double sharp = 0.25 * gamma * gamma;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        ElEigenReport r = solve_el_eigenproblem_report(gamma, N, eps, mesh_n);
        std::printf("%-10.0e %-14.8f %-14.6f\n", eps, r.lambda1, r.concentration_fraction);
        decreasing = decreasing && r.lambda1 < prev;
        above = above && r.lambda1 >= sharp - 1e-12;
        prev = r.lambda1;
    }
    std::printf("limit (gamma/2)^2 = %.8f\n", sharp);
    return (decreasing && above) ? 0 : 1;
}

int cmd_sweep(const ParamFlags& pf, const std::string& param, std::vector<double> values,
              double delta, const SuiteOptions& opt, const std::string& out_path) {
    if (values.empty()) {
        std::fprintf(stderr, "error: empty sweep grid\n");
        return exit_code_inadmissible();
    }
    InequalityParams q = pf.build_unchecked();
    const QuadratureConfig cfg = opt.quad();
    std::string csv = "param,value,quotient,sharp,relative_gap,numerator,denominator,"
                      "divergent_num,divergent_den\n";
    char line[512];
    auto add_row = [&](double value, const QuotientReport& r) {
        std::snprintf(line, sizeof(line), "%s,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%d,%d\n",
                      param.c_str(), value, r.quotient, r.sharp_constant, r.relative_gap,
                      r.numerator.value, r.denominator.value, r.divergent_numerator ? 1 : 0,
                      r.divergent_denominator ? 1 : 0);
        csv += line;
    };

    if (param == "A") {
        q.validate();
        for (double A : values)
            add_row(A, quotient(boundary_test_function(A, delta, q.gamma, q.R), q, cfg));
    } else if (param == "B") {
        q.validate();
        for (double B : values)
            add_row(B, quotient(origin_test_function(B, delta, q.R), q, cfg));
    } else if (param == "gamma") {
        // gamma -> 0 limit sweep on a fixed interior bump; the gamma = 0 row
        // is the log-weight limit form
        RadialProfile u = poly_bump(0.35 * q.R, 0.75 * q.R, 6, 1.0, q.R);
        for (double g : values) {
            InequalityParams qg = q;
            qg.gamma = g;
            qg.validate();
            add_row(g, quotient(u, qg, cfg));
        }
        InequalityParams qlog = q;
        qlog.form = (q.form == Form::ImprovedRellichP2 || q.form == Form::ImprovedRellichKP2 ||
                     q.form == Form::ImprovedRellichRad)
                        ? Form::CriticalRellich
                        : Form::LogHardy;
        qlog.gamma = 1.0;
        qlog.validate();
        add_row(0.0, quotient(u, qlog, cfg));
    } else {
        std::fprintf(stderr, "error: unknown sweep parameter '%s' (use A, B, or gamma)\n",
                     param.c_str());
        return exit_code_inadmissible();
    }

    if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::ofstream os(out_path, std::ios::binary);
        os << csv;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hardylab: numerical verification of sharp Hardy- and Rellich-type "
                 "inequalities on the ball"};
    app.require_subcommand(1);

    // constant
    auto* c_cmd = app.add_subcommand("constant", "print a sharp constant with its hypothesis list");
    ParamFlags c_pf;
    c_pf.add_to(c_cmd);
    double c_q = 4.0;
    bool c_trad = false;
    c_cmd->add_option("-q,--sobolev-exponent", c_q, "target exponent q (t-rad only)");
    c_cmd->add_flag("--t-rad", c_trad, "evaluate the attained Hardy-Sobolev constant T_rad");

    // verify
    auto* v_cmd = app.add_subcommand("verify", "run a verification suite over a seeded corpus");
    std::string v_suite = "all";
    v_cmd->add_option("suite", v_suite, "inequalities|identity|recursion|transplant|scaling|limits|variational|all")
        ->required();
    SuiteOptions opt;
    opt.seed = default_seed();
    std::string v_out, v_format = "json";
    ParamFlags v_pf;
    bool v_el = false;
    v_cmd->add_option("--seed", opt.seed, "corpus seed (HARDYLAB_SEED)");
    v_cmd->add_option("-o,--output", v_out, "report file path");
    v_cmd->add_option("--format", v_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    v_cmd->add_option("--jobs", opt.jobs, "worker threads (0 = hardware)");
    v_cmd->add_option("--cases", opt.profiles_per_form, "profiles per form (inequalities suite)");
    v_cmd->add_option("--identity-cases", opt.identity_cases, "identity suite case count");
    v_cmd->add_option("--quad-tol", opt.quad_tol, "quadrature relative tolerance");
    v_cmd->add_option("--gap-tol", opt.gap_tol, "inequality gap tolerance");
    v_cmd->add_option("--identity-tol", opt.identity_tol, "identity residual tolerance");
    v_cmd->add_option("--recursion-tol", opt.recursion_tol, "recursion oracle tolerance");
    v_cmd->add_option("--transplant-tol", opt.transplant_tol, "chart equality tolerance");
    v_cmd->add_option("--scaling-tol", opt.scaling_tol, "scaling invariance tolerance");
    v_cmd->add_option("--limit-tol", opt.limit_final, "gamma->0 final difference bound");
    v_cmd->add_option("--mesh-n", opt.variational_mesh, "minimization mesh elements");
    v_cmd->add_option("--el-mesh", opt.el_mesh, "eigenproblem mesh elements");
    double v_gamma = 1.0;
    v_cmd->add_option("--gamma", v_gamma, "gamma for --form el");
    v_cmd->add_option("-N,--dim", v_pf.N, "dimension for --form el");
    std::string v_form;
    v_cmd->add_option("--form", v_form, "el: print the regularized eigenvalue sweep");

    // sweep
    auto* s_cmd = app.add_subcommand("sweep", "emit quotient/constant/gap rows along a parameter");
    ParamFlags s_pf;
    s_pf.add_to(s_cmd);
    std::string s_param = "A", s_values, s_out;
    double s_delta = 0.05;
    s_cmd->add_option("--param", s_param, "swept parameter: A | B | gamma")->required();
    s_cmd->add_option("--values", s_values, "comma-separated grid")->required();
    s_cmd->add_option("--delta", s_delta, "cutoff width for the test family");
    s_cmd->add_option("-o,--output", s_out, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (c_cmd->parsed()) return cmd_constant(c_pf, c_q, c_trad);
        if (v_cmd->parsed()) {
            if (v_form == "el") return cmd_verify_el(v_gamma, v_pf.N, opt.el_mesh);
            if (!v_form.empty()) {
                std::fprintf(stderr, "error: --form only supports 'el' under verify\n");
                return 2;
            }
            bool known = v_suite == "all";
            for (const auto& n : hardylab::suite_names()) known = known || n == v_suite;
            if (!known) {
                std::fprintf(stderr, "error: unknown suite '%s'\n", v_suite.c_str());
                return 2;
            }
            return cmd_verify(v_suite, opt, v_out, v_format);
        }
        if (s_cmd->parsed()) {
            std::vector<double> values;
            std::string token;
            std::istringstream iss(s_values);
            while (std::getline(iss, token, ',')) {
                if (!token.empty()) values.push_back(std::stod(token));
            }
            return cmd_sweep(s_pf, s_param, values, s_delta, opt, s_out);
        }
    } catch (const hardylab::AdmissibilityError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
