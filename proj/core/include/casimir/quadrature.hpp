#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace casimir::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;        // absolute error estimate
    bool converged = false;
    int subdivisions = 0;
    double worst_a = 0.0;      // worst remaining panel, for diagnostics
    double worst_b = 0.0;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK dqk15).
inline constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    double value;
    double error;
};

template <class F>
Panel kronrod15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    fv[7] = f(center);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        fv[j] = f(center - dx);
        fv[14 - j] = f(center + dx);
    }

    double resk = wgk[7] * fv[7];
    double resg = wg[3] * fv[7];
    for (int j = 0; j < 7; ++j) {
        resk += wgk[j] * (fv[j] + fv[14 - j]);
        if (j % 2 == 1) resg += wg[j / 2] * (fv[j] + fv[14 - j]);
    }

    const double reskh = 0.5 * resk;
    double resasc = wgk[7] * std::abs(fv[7] - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));
    resasc *= half;

    double err = std::abs(resk - resg) * half;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));

    return {a, b, resk * half, err};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod 7/15 on [a, b]: repeatedly bisects the panel with
/// the largest error estimate until |error| <= max(abs_tol, rel_tol * |value|)
/// or max_subdivisions bisections have been spent.
template <class F>
Result integrate(F&& f, double a, double b, double rel_tol, double abs_tol,
                 int max_subdivisions) {
    Result out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    std::vector<detail::Panel> panels;
    panels.reserve(static_cast<std::size_t>(max_subdivisions) + 1);
    panels.push_back(detail::kronrod15(f, a, b));

    auto by_error = [](const detail::Panel& p, const detail::Panel& q) {
        return p.error < q.error;
    };
    std::make_heap(panels.begin(), panels.end(), by_error);

    for (int iter = 0;; ++iter) {
        double total = 0.0, err = 0.0;
        for (const auto& p : panels) {
            total += p.value;
            err += p.error;
        }
        out.value = total;
        out.error = err;
        out.subdivisions = iter;
        out.worst_a = panels.front().a;
        out.worst_b = panels.front().b;
        if (err <= std::max(abs_tol, rel_tol * std::abs(total))) {
            out.converged = true;
            return out;
        }
        if (iter >= max_subdivisions) return out;  // converged = false

        std::pop_heap(panels.begin(), panels.end(), by_error);
        const detail::Panel worst = panels.back();
        panels.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        panels.push_back(detail::kronrod15(f, worst.a, mid));
        std::push_heap(panels.begin(), panels.end(), by_error);
        panels.push_back(detail::kronrod15(f, mid, worst.b));
        std::push_heap(panels.begin(), panels.end(), by_error);
    }
}

}  // namespace casimir::quad
