#include "outcorr/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "outcorr/errors.hpp"

namespace outcorr {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// |z| beyond which the Pfaff series (argument z/(z-1) -> 1) becomes too slow and
// the 1/z connection formula takes over.
constexpr double kDeepNegativeZ = 400.0;

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

bool near_integer(double x) {
    return std::abs(x - std::round(x)) < 1e-8;
}

double gamma_sign(double x) {
    // Gamma alternates sign on successive negative unit intervals.
    if (x > 0.0) return 1.0;
    return static_cast<long long>(std::floor(x)) % 2 == 0 ? 1.0 : -1.0;
}

// Kahan-compensated power series sum_{n>=0} (a)_n (b)_n / ((c)_n n!) w^n.
double series_2f1(double a, double b, double c, double w, const char* ctx) {
    double term = 1.0;
    double sum = 1.0;
    double comp = 0.0;
    int small_streak = 0;
    constexpr long kMaxTerms = 1000000;
    for (long n = 0; n < kMaxTerms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * w;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (term == 0.0) return sum;  // terminating (polynomial) case
        if (std::abs(term) <= kEps * std::abs(sum)) {
            if (++small_streak >= 2) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw NumericalError("gauss_2f1: series did not converge within 1000000 terms (" +
                             std::string(ctx) + ")",
                         sum, std::abs(term));
}

// Connection formula at 1/z (valid when a1 - a2 is not an integer):
//   F(a,b;c;z) = G(c)G(b-a)/(G(b)G(c-a)) (-z)^-a F(a, a-c+1; a-b+1; 1/z) + (a <-> b)
double deep_negative_2f1(double a, double b, double c, double z) {
    const double lz = std::log(-z);
    double total = 0.0;
    if (!is_nonpositive_integer(b) && !is_nonpositive_integer(c - a)) {
        const double lg = std::lgamma(c) + std::lgamma(b - a) - std::lgamma(b) -
                          std::lgamma(c - a);
        const double sg = gamma_sign(c) * gamma_sign(b - a) * gamma_sign(b) *
                          gamma_sign(c - a);
        const double s = series_2f1(a, a - c + 1.0, a - b + 1.0, 1.0 / z, "1/z branch");
        total += sg * std::exp(lg - a * lz) * s;
    }
    if (!is_nonpositive_integer(a) && !is_nonpositive_integer(c - b)) {
        const double lg = std::lgamma(c) + std::lgamma(a - b) - std::lgamma(a) -
                          std::lgamma(c - b);
        const double sg = gamma_sign(c) * gamma_sign(a - b) * gamma_sign(a) *
                          gamma_sign(c - b);
        const double s = series_2f1(b, b - c + 1.0, b - a + 1.0, 1.0 / z, "1/z branch");
        total += sg * std::exp(lg - b * lz) * s;
    }
    return total;
}

double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term <= kEps * sum) break;
    }
    return sum;
}

// exp(-x) I0(x) ~ (1/sqrt(2 pi x)) sum_k ((2k-1)!!)^2 / (k! (8x)^k), truncated at
// the smallest term.
double i0_asymptotic_scaled(double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double m = 2.0 * k - 1.0;
        const double next = term * m * m / (8.0 * k * x);
        if (next >= term) break;
        term = next;
        sum += term;
        if (term <= kEps * sum) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

constexpr double kI0SeriesCutoff = 18.0;

// 15-point Kronrod / 7-point Gauss pair.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct RuleResult {
    double value;
    double err;
    double resabs;
};

RuleResult kronrod15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(fc) * kWgk[7];
    double fv[7][2];
    for (int j = 0; j < 7; ++j) {
        const double dx = hl * kXgk[j];
        fv[j][0] = f(center - dx);
        fv[j][1] = f(center + dx);
        const double fsum = fv[j][0] + fv[j][1];
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv[j][0]) + std::abs(fv[j][1]));
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j][0] - reskh) + std::abs(fv[j][1] - reskh));
    resabs *= std::abs(hl);
    resasc *= std::abs(hl);
    double err = std::abs((resk - resg) * hl);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        err = std::max(50.0 * kEps * resabs, err);
    return {resk * hl, err, resabs};
}

struct Segment {
    double err;
    double a;
    double b;
    double value;
    double resabs;
    bool operator<(const Segment& other) const { return err < other.err; }
};

double adaptive(const std::function<double(double)>& f, double lo, double hi,
                const QuadSpec& spec) {
    const RuleResult whole = kronrod15(f, lo, hi);
    double total = whole.value;
    double toterr = whole.err;
    double totabs = whole.resabs;
    std::priority_queue<Segment> heap;
    heap.push({whole.err, lo, hi, whole.value, whole.resabs});
    const auto tolerance = [&] {
        return std::max({spec.abs_tol, spec.rel_tol * std::abs(total),
                         50.0 * kEps * totabs});
    };
    int splits = 0;
    while (toterr > tolerance()) {
        if (splits >= spec.max_subdivisions)
            throw NumericalError("integrate_1d: subdivision budget exhausted", total,
                                 toterr);
        const Segment worst = heap.top();
        if (worst.err <= kEps * std::abs(total)) break;  // round-off limited
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // machine resolution
        heap.pop();
        const RuleResult left = kronrod15(f, worst.a, mid);
        const RuleResult right = kronrod15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        toterr += left.err + right.err - worst.err;
        totabs += left.resabs + right.resabs - worst.resabs;
        heap.push({left.err, worst.a, mid, left.value, left.resabs});
        heap.push({right.err, mid, worst.b, right.value, right.resabs});
        ++splits;
    }
    return total;
}

void check_spec(const QuadSpec& spec) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_subdivisions < 1)
        throw std::domain_error("QuadSpec: abs_tol > 0, rel_tol > 0, max_subdivisions >= 1");
}

}  // namespace

double gauss_2f1(double a1, double a2, double b, double z) {
    if (is_nonpositive_integer(b))
        throw std::domain_error("gauss_2f1: b must not be a non-positive integer");
    if (!(z < 1.0))
        throw std::domain_error("gauss_2f1: argument must satisfy z <= 0 or |z| < 1");
    if (z == 0.0) return 1.0;
    if (z < -0.5) {
        if (z < -kDeepNegativeZ && !near_integer(a1 - a2))
            return deep_negative_2f1(a1, a2, b, z);
        const double w = z / (z - 1.0);
        return std::pow(1.0 - z, -a1) * series_2f1(a1, b - a2, b, w, "Pfaff branch");
    }
    return series_2f1(a1, a2, b, z, "direct series");
}

double bessel_i0(double x) {
    if (x < 0.0) throw std::domain_error("bessel_i0: x must be >= 0");
    if (x < kI0SeriesCutoff) return i0_series(x);
    return std::exp(x) * i0_asymptotic_scaled(x);
}

double bessel_i0_scaled(double x) {
    if (x < 0.0) throw std::domain_error("bessel_i0_scaled: x must be >= 0");
    if (x < kI0SeriesCutoff) return std::exp(-x) * i0_series(x);
    return i0_asymptotic_scaled(x);
}

double integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                    const QuadSpec& spec) {
    check_spec(spec);
    if (std::isnan(lo) || std::isnan(hi) || std::isinf(lo))
        throw std::domain_error("integrate_1d: invalid interval endpoints");
    if (!(lo <= hi)) throw std::domain_error("integrate_1d: require lo <= hi");
    if (lo == hi) return 0.0;
    if (std::isinf(hi)) {
        const auto mapped = [&f, lo](double t) {
            const double u = 1.0 - t;
            return f(lo + t / u) / (u * u);
        };
        return adaptive(mapped, 0.0, 1.0, spec);
    }
    return adaptive(f, lo, hi, spec);
}

double integrate_2d_polar(const std::function<double(double, double)>& f,
                          const QuadSpec& spec) {
    check_spec(spec);
    QuadSpec inner = spec;
    inner.abs_tol = 0.1 * spec.abs_tol;
    inner.rel_tol = 0.1 * spec.rel_tol;
    const double two_pi = 2.0 * std::numbers::pi;
    const auto outer = [&](double rho) {
        return integrate_1d([&f, rho](double phi) { return f(rho, phi); }, 0.0, two_pi,
                            inner);
    };
    return integrate_1d(outer, 0.0, 1.0, spec) / two_pi;
}

}  // namespace outcorr
