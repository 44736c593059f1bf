#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hardylab/numeric.hpp"

namespace hardylab {

/// Which inequality a parameter set refers to. Hardy-type forms compare
/// |u'|^p against |u|^p with first-order weights; Rellich-type forms use
/// |grad^k u|^p; the two *Step forms compare |lap u|^p against |u'|^p.
enum class Form {
    ClassicalHardy,
    GeometricHardy,
    ImprovedHardy,
    ImprovedHardyA,
    ImprovedHardyB,
    LogHardy,
    Rellich,
    GeometricRellich,
    ImprovedRellichP2,
    ImprovedRellichBP2,
    ImprovedRellichKP2,
    ImprovedRellichRad,
    ImprovedRellichRadB,
    CriticalRellich,
    OneDimHardy,
    OneDimImprovedHardy,
    HardyRellichStep,
    ImprovedHardyRellichStep,
};

inline const std::vector<std::pair<Form, std::string>>& form_names() {
    static const std::vector<std::pair<Form, std::string>> table = {
        {Form::ClassicalHardy, "classical-hardy"},
        {Form::GeometricHardy, "geometric-hardy"},
        {Form::ImprovedHardy, "improved-hardy"},
        {Form::ImprovedHardyA, "improved-hardy-a"},
        {Form::ImprovedHardyB, "improved-hardy-b"},
        {Form::LogHardy, "log-hardy"},
        {Form::Rellich, "rellich"},
        {Form::GeometricRellich, "geometric-rellich"},
        {Form::ImprovedRellichP2, "improved-rellich-p2"},
        {Form::ImprovedRellichBP2, "improved-rellich-b-p2"},
        {Form::ImprovedRellichKP2, "improved-rellich-k-p2"},
        {Form::ImprovedRellichRad, "improved-rellich-rad"},
        {Form::ImprovedRellichRadB, "improved-rellich-rad-b"},
        {Form::CriticalRellich, "critical-rellich"},
        {Form::OneDimHardy, "one-dim-hardy"},
        {Form::OneDimImprovedHardy, "one-dim-improved-hardy"},
        {Form::HardyRellichStep, "hardy-rellich-step"},
        {Form::ImprovedHardyRellichStep, "improved-hardy-rellich-step"},
    };
    return table;
}

inline std::string form_name(Form f) {
    for (const auto& [form, name] : form_names())
        if (form == f) return name;
    return "?";
}

inline std::optional<Form> form_from_name(const std::string& s) {
    for (const auto& [form, name] : form_names())
        if (name == s) return form;
    return std::nullopt;
}

struct Hypothesis {
    std::string text;
    bool holds;
};

/// Parameter tuple (N, p, alpha, beta, gamma, R, k) plus the form tag.
/// Construct through make(); construction fails with a diagnostic naming
/// every violated hypothesis of the selected form.
struct InequalityParams {
    int N = 3;
    double p = 2.0;
    double alpha = 0.0;
    double beta = 2.0;
    double gamma = 1.0;
    double R = 1.0;
    int k = 2;
    Form form = Form::ImprovedHardy;

    int m() const { return k / 2; }  // derived, never stored
    bool k_odd() const { return k % 2 == 1; }

    /// Hypothesis list of the selected form, each entry evaluated.
    std::vector<Hypothesis> hypotheses() const {
        std::vector<Hypothesis> hs;
        auto add = [&hs](const std::string& text, bool holds) { hs.push_back({text, holds}); };
        const double a = alpha, b = beta, g = gamma;
        add("R > 0", R > 0.0);
        switch (form) {
            case Form::ClassicalHardy:
                add("N >= 2", N >= 2);
                add("1 < p", p > 1.0);
                add("alpha < N", a < N);
                break;
            case Form::GeometricHardy:
                add("N >= 2", N >= 2);
                add("1 < p", p > 1.0);
                add("beta > 1", b > 1.0);
                break;
            case Form::ImprovedHardy:
                add("N >= 2", N >= 2);
                add("p >= 1", p >= 1.0);
                add("beta > 1", b > 1.0);
                add("gamma > 0", g > 0.0);
                add("alpha <= N - (beta-1)*gamma", a <= N - (b - 1.0) * g);
                break;
            case Form::ImprovedHardyA:
                add("N >= 2", N >= 2);
                add("p >= 1", p >= 1.0);
                add("gamma > 0", g > 0.0);
                add("beta >= 0", b >= 0.0);
                add("alpha <= N", a <= N);
                break;
            case Form::ImprovedHardyB:
                add("N >= 2", N >= 2);
                add("p >= 1", p >= 1.0);
                add("gamma > 0", g > 0.0);
                add("beta > 1", b > 1.0);
                add("alpha < N - (p-1)*gamma", a < N - (p - 1.0) * g);
                break;
            case Form::LogHardy:
                add("N >= 2", N >= 2);
                add("p >= 1", p >= 1.0);
                add("beta > 1", b > 1.0);
                add("alpha <= N", a <= N);
                break;
            case Form::Rellich:
                add("N >= 2", N >= 2);
                add("p > 1", p > 1.0);
                add("k >= 2", k >= 2);
                add("alpha > 2 + 2(m-1)p", a > 2.0 + 2.0 * (m() - 1) * p);
                add("alpha < N", a < N);
                break;
            case Form::GeometricRellich:
                add("N >= 2", N >= 2);
                add("p = 2", p == 2.0);
                add("k >= 1", k >= 1);
                break;
            case Form::ImprovedRellichP2:
                add("N >= 2", N >= 2);
                add("p = 2", p == 2.0);
                add("gamma > 0", g > 0.0);
                add("alpha > 4 - N", a > 4.0 - N);
                add("alpha <= N - gamma", a <= N - g);
                break;
            case Form::ImprovedRellichBP2:
                add("N >= 2", N >= 2);
                add("p = 2", p == 2.0);
                add("gamma > 0", g > 0.0);
                add("alpha >= 3", a >= 3.0);
                add("alpha <= min(N - gamma + 2, N - 3*gamma)",
                    a <= std::min(N - g + 2.0, N - 3.0 * g));
                break;
            case Form::ImprovedRellichKP2:
                add("N >= 2", N >= 2);
                add("p = 2", p == 2.0);
                add("k >= 3", k >= 3);
                add("gamma > 0", g > 0.0);
                add("alpha > -2 + 4m", a > -2.0 + 4.0 * m());
                add("alpha <= N - gamma", a <= N - g);
                break;
            case Form::ImprovedRellichRad:
                add("N >= 2", N >= 2);
                add("p > 1", p > 1.0);
                add("k >= 2", k >= 2);
                add("gamma > 0", g > 0.0);
                add("alpha <= N - (p-1)*gamma", a <= N - (p - 1.0) * g);
                break;
            case Form::ImprovedRellichRadB:
                add("N >= 2", N >= 2);
                add("p > 1", p > 1.0);
                add("k >= 2", k >= 2);
                add("gamma > 0", g > 0.0);
                add("beta > (k-1)p + 1", b > (k - 1) * p + 1.0);
                add("alpha <= N - (beta-p-1)*gamma - (N-2)*p",
                    a <= N - (b - p - 1.0) * g - (N - 2) * p);
                add("alpha <= N - (beta-1)*gamma", a <= N - (b - 1.0) * g);
                break;
            case Form::CriticalRellich:
                add("N >= 2", N >= 2);
                add("p > 1", p > 1.0);
                add("k >= 1", k >= 1);
                add("alpha <= N", a <= N);
                add("alpha < N", a < N);
                break;
            case Form::OneDimHardy:
                add("p >= 1", p >= 1.0);
                break;
            case Form::OneDimImprovedHardy:
                add("p >= 1", p >= 1.0);
                add("gamma > 0", g > 0.0);
                add("beta > 1", b > 1.0);
                add("alpha + 1 - (beta-1)*gamma >= 0", a + 1.0 - (b - 1.0) * g >= 0.0);
                break;
            case Form::HardyRellichStep:
                add("N >= 2", N >= 2);
                add("p >= 1", p >= 1.0);
                add("alpha < N", a < N);
                break;
            case Form::ImprovedHardyRellichStep:
                add("N >= 2", N >= 2);
                add("p >= 1", p >= 1.0);
                add("beta > 1", b > 1.0);
                add("gamma > 0", g > 0.0);
                add("alpha <= N - (beta-1)*gamma - (N-1)*p",
                    a <= N - (b - 1.0) * g - (N - 1) * p);
                break;
        }
        return hs;
    }

    std::vector<std::string> violated() const {
        std::vector<std::string> bad;
        for (const auto& h : hypotheses())
            if (!h.holds) bad.push_back(h.text);
        return bad;
    }

    bool admissible() const { return violated().empty(); }

    void validate() const {
        auto bad = violated();
        if (bad.empty()) return;
        std::ostringstream os;
        os << "inadmissible parameters for form '" << form_name(form) << "':";
        for (const auto& v : bad) os << " [" << v << " required]";
        throw AdmissibilityError(os.str());
    }

    static InequalityParams make(Form form, int N, double p, double alpha, double beta,
                                 double gamma, double R = 1.0, int k = 2) {
        InequalityParams q{N, p, alpha, beta, gamma, R, k, form};
        q.validate();
        return q;
    }
};

/// Parameters of the weighted radial Sobolev minimization (full-space chart):
/// exponents A (gradient weight |y|^{Ap}) and B (mass weight |y|^{Bq}), with
/// q and h derived from the balance relation.
struct SRadParams {
    int N = 3;
    double p = 2.0;
    double A = 0.0;
    double B = 0.0;

    double one_minus_A_plus_B() const { return 1.0 - A + B; }
    double q() const { return N * p / (N - one_minus_A_plus_B() * p); }
    double h() const {
        return one_minus_A_plus_B() * (N - p + p * A) / (N - one_minus_A_plus_B() * p);
    }

    std::vector<Hypothesis> hypotheses() const {
        std::vector<Hypothesis> hs;
        const double s = one_minus_A_plus_B();
        hs.push_back({"N >= 2", N >= 2});
        hs.push_back({"p > 1", p > 1.0});
        hs.push_back({"(1-A+B)p < N", s * p < N});
        hs.push_back({"1-A+B > 0 (so q > p)", s > 0.0});
        hs.push_back({"A > (p-N)/p", A > (p - N) / p});
        if (s * p < N && s > 0.0) hs.push_back({"B > -N/q", B > -N / q()});
        return hs;
    }

    bool admissible() const {
        for (const auto& h : hypotheses())
            if (!h.holds) return false;
        return true;
    }

    void validate() const {
        std::ostringstream os;
        bool ok = true;
        os << "inadmissible S_rad parameters:";
        for (const auto& h : hypotheses())
            if (!h.holds) {
                ok = false;
                os << " [" << h.text << " required]";
            }
        if (!ok) throw AdmissibilityError(os.str());
    }

    static SRadParams make(int N, double p, double A, double B) {
        SRadParams s{N, p, A, B};
        s.validate();
        return s;
    }
};

}  // namespace hardylab
