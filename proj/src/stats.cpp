#include "fjssp/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace fjssp {

namespace {

constexpr double kEps = 1e-14;
constexpr int kMaxIter = 500;

// lower-tail series expansion of P(a, x)
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// upper-tail continued fraction of Q(a, x) (modified Lentz)
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (a <= 0.0) throw std::invalid_argument("regularized_gamma_q: a must be positive");
    if (x < 0.0) throw std::invalid_argument("regularized_gamma_q: x must be non-negative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_squared_tail(double x, int df) {
    if (df < 1) throw std::invalid_argument("chi_squared_tail: df must be >= 1");
    if (x <= 0.0) return 1.0;
    return regularized_gamma_q(0.5 * df, 0.5 * x);
}

double nemenyi_q05(int k) {
    // studentized range q_{0.05, k, inf} / sqrt(2), k = 2..20
    static const double table[] = {
        1.959964, 2.343701, 2.569032, 2.727774, 2.849705, 2.948319, 3.030879,
        3.101730, 3.163684, 3.218654, 3.268004, 3.312739, 3.353618, 3.391230,
        3.426041, 3.458425, 3.488685, 3.517073, 3.543799,
    };
    if (k < 2 || k > 20)
        throw std::invalid_argument("nemenyi_q05: k must be in [2, 20]");
    return table[k - 2];
}

}  // namespace fjssp
