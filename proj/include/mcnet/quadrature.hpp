#ifndef MCNET_QUADRATURE_HPP
#define MCNET_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mcnet/errors.hpp"

namespace mcnet {

// Tolerances for the adaptive integrators. The estimated error of a result I
// is driven below max(abs_tol, rel_tol * |I|).
struct QuadSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;
};

namespace detail {

// 15-point Kronrod abscissae (positive half, descending) and weights,
// with the embedded 7-point Gauss rule on the odd indices.
inline constexpr double kGkNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    double integral;
    double error;
    bool splittable;
};

// One Gauss-Kronrod 7-15 evaluation on [a,b]. Follows the QUADPACK qk15
// error heuristic (scaled |K15-G7| damped by the local variation resasc).
template <typename F>
Segment gk15(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double centre = 0.5 * (a + b);

    const double fc = f(centre);
    double resg = kGaussW[3] * fc;
    double resk = kKronrodW[7] * fc;
    double resabs = std::abs(resk);

    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double absc = half * kGkNodes[j];
        fv1[j] = f(centre - absc);
        fv2[j] = f(centre + absc);
        const double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) resg += kGaussW[j / 2] * fsum;
        resk += kKronrodW[j] * fsum;
        resabs += kKronrodW[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    }

    const double reskh = 0.5 * resk;
    double resasc = kKronrodW[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kKronrodW[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double integral = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);

    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);

    const bool splittable = centre > a && centre < b;
    return {a, b, integral, err, splittable};
}

} // namespace detail

// Adaptive Gauss-Kronrod on a finite interval. Evaluates f at interior nodes
// only, so integrable endpoint singularities need no special casing. Throws
// NonConvergence when the subdivision budget runs out with the error still
// above tolerance; segments too narrow to split are accepted as-is (roundoff
// floor).
template <typename F>
double integrate_finite(F&& f, double a, double b, const QuadSpec& spec = {}) {
    if (!(spec.abs_tol > 0) || !(spec.rel_tol > 0) || spec.max_subdivisions < 1)
        throw ValidationError("quadrature tolerances must be positive and max_subdivisions >= 1");
    if (!(a <= b)) throw ValidationError("integration bounds must satisfy a <= b");
    if (a == b) return 0.0;

    std::vector<detail::Segment> segs;
    segs.reserve(64);
    segs.push_back(detail::gk15(f, a, b));

    auto worse = [](const detail::Segment& l, const detail::Segment& r) {
        return l.error < r.error; // max-heap on error
    };
    std::make_heap(segs.begin(), segs.end(), worse);

    double frozen_integral = 0.0, frozen_error = 0.0;

    for (;;) {
        double total = frozen_integral, err = frozen_error;
        for (const auto& s : segs) {
            total += s.integral;
            err += s.error;
        }
        if (err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) return total;
        if (segs.empty()) return total; // every segment at roundoff width

        std::pop_heap(segs.begin(), segs.end(), worse);
        detail::Segment top = segs.back();
        segs.pop_back();

        if (!top.splittable) {
            frozen_integral += top.integral;
            frozen_error += top.error;
            continue;
        }
        if (static_cast<int>(segs.size()) + 2 > spec.max_subdivisions)
            throw NonConvergence("integrate_finite: subdivision budget exhausted");

        const double mid = 0.5 * (top.a + top.b);
        segs.push_back(detail::gk15(f, top.a, mid));
        std::push_heap(segs.begin(), segs.end(), worse);
        segs.push_back(detail::gk15(f, mid, top.b));
        std::push_heap(segs.begin(), segs.end(), worse);
    }
}

// Integral over [a, inf) via the substitution u = 1/(1 + t - a), which maps
// the tail onto (0, 1]. Assumes f is integrable and eventually decaying.
template <typename F>
double integrate_semi_infinite(F&& f, double a, const QuadSpec& spec = {}) {
    auto mapped = [&f, a](double u) {
        const double t = a + (1.0 - u) / u;
        const double fv = f(t);
        if (fv == 0.0) return 0.0; // avoid 0 * inf at extreme u
        return fv / (u * u);
    };
    return integrate_finite(mapped, 0.0, 1.0, spec);
}

} // namespace mcnet

#endif
