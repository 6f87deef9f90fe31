#include "zknono/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace zknono {

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double gamm_series(double a, double x) {
    const double gln = std::lgamma(a);
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15)
            return sum * std::exp(-x + a * std::log(x) - gln);
    }
    return sum * std::exp(-x + a * std::log(x) - gln);
}

// Continued fraction for Q(a, x), valid for x >= a + 1.
double gamm_cf(double a, double x) {
    const double gln = std::lgamma(a);
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

}  // namespace

double gammq(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gammq domain");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamm_series(a, x);
    return gamm_cf(a, x);
}

ChiSquareResult chi_square_uniform(const std::vector<std::uint64_t>& counts) {
    ChiSquareResult r;
    const std::size_t k = counts.size();
    if (k < 2) return r;
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    if (total == 0) return r;
    const double expected = static_cast<double>(total) / static_cast<double>(k);
    for (std::uint64_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        r.statistic += d * d / expected;
    }
    r.df = static_cast<int>(k) - 1;
    r.p_value = gammq(r.df / 2.0, r.statistic / 2.0);
    return r;
}

ChiSquareResult chi_square_homogeneity(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b) {
    ChiSquareResult r;
    if (a.size() != b.size()) throw std::invalid_argument("category count mismatch");
    double total_a = 0, total_b = 0;
    int used = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        total_a += static_cast<double>(a[i]);
        total_b += static_cast<double>(b[i]);
        if (a[i] + b[i] > 0) ++used;
    }
    if (total_a == 0 || total_b == 0 || used < 2) return r;
    const double total = total_a + total_b;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double col = static_cast<double>(a[i] + b[i]);
        if (col == 0) continue;
        const double ea = col * total_a / total;
        const double eb = col * total_b / total;
        const double da = static_cast<double>(a[i]) - ea;
        const double db = static_cast<double>(b[i]) - eb;
        r.statistic += da * da / ea + db * db / eb;
    }
    r.df = used - 1;
    r.p_value = gammq(r.df / 2.0, r.statistic / 2.0);
    return r;
}

}  // namespace zknono
