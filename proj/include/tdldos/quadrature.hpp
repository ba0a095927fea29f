#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "error.hpp"

namespace tdldos {

struct QuadOptions {
    double rtol = 1e-9;
    double atol = 1e-13;
    /// Maximum number of bisections applied to one base segment.
    int max_depth = 50;
    std::size_t max_intervals = 1u << 20;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

struct SimpsonPanel {
    double a, b;
    double fa, fl, fm, fr, fb; // f at a, a+h/4, a+h/2, a+3h/4, b
    int depth;
    double coarse, fine, error;

    void estimate() {
        const double h = b - a;
        coarse = h / 6.0 * (fa + 4.0 * fm + fb);
        fine = h / 12.0 * (fa + 4.0 * fl + 2.0 * fm + 4.0 * fr + fb);
        error = std::abs(fine - coarse) / 15.0;
    }
    double value() const { return fine + (fine - coarse) / 15.0; }
};

struct PanelWorse {
    bool operator()(const SimpsonPanel& x, const SimpsonPanel& y) const { return x.error < y.error; }
};

} // namespace detail

/**
 * Globally adaptive Simpson quadrature of f over [a, b].
 *
 * The domain is first cut at every split point inside (a, b); those cuts are never
 * straddled by a panel, so f may jump there. Each segment is evaluated at
 * nextafter(end, start) instead of its right end, so a right-continuous jump at a
 * split point is integrated from its left limit. Panels are bisected worst-first
 * until the summed error estimate is at most max(rtol·|I|, atol).
 */
template <class F>
QuadResult quad_adaptive(F&& f, double a, double b, std::span<const double> split_points,
                         const QuadOptions& opt = {}) {
    if (!(a <= b)) throw Error("quad_adaptive: require a <= b");
    if (!std::isfinite(a) || !std::isfinite(b)) throw Error("quad_adaptive: bounds must be finite");
    QuadResult out;
    if (a == b) return out;

    std::vector<double> cuts{a};
    for (double s : split_points)
        if (s > a && s < b) cuts.push_back(s);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto eval = [&](double t) {
        ++out.evaluations;
        const double v = f(t);
        if (!std::isfinite(v)) throw Error("quad_adaptive: integrand not finite at t=" + std::to_string(t));
        return v;
    };

    std::vector<detail::SimpsonPanel> open; // max-heap on error
    std::vector<detail::SimpsonPanel> frozen;
    const detail::PanelWorse worse;
    double total = 0.0;
    double total_err = 0.0;

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double s = cuts[i];
        const double e = cuts[i + 1];
        const double h = e - s;
        detail::SimpsonPanel p{s, e, eval(s), eval(s + 0.25 * h), eval(s + 0.5 * h),
                               eval(s + 0.75 * h), eval(std::nextafter(e, s)), 0, 0, 0, 0};
        p.estimate();
        open.push_back(p);
    }
    std::make_heap(open.begin(), open.end(), worse);

    // Exact sums in left-to-right order, so the result does not carry drift from running updates.
    auto resum = [&] {
        std::vector<const detail::SimpsonPanel*> all;
        all.reserve(open.size() + frozen.size());
        for (const auto& p : open) all.push_back(&p);
        for (const auto& p : frozen) all.push_back(&p);
        std::sort(all.begin(), all.end(), [](const auto* x, const auto* y) { return x->a < y->a; });
        total = 0.0;
        total_err = 0.0;
        for (const auto* p : all) {
            total += p->value();
            total_err += p->error;
        }
    };
    auto tolerance = [&] { return std::max(opt.rtol * std::abs(total), opt.atol); };

    resum();
    while (total_err > tolerance() && !open.empty()) {
        while (!open.empty() && total_err > tolerance()) {
            std::pop_heap(open.begin(), open.end(), worse);
            detail::SimpsonPanel p = open.back();
            open.pop_back();
            if (p.depth >= opt.max_depth) {
                frozen.push_back(p);
                continue;
            }
            if (open.size() + frozen.size() + 2 > opt.max_intervals) {
                throw QuadratureError("quad_adaptive: interval budget exhausted", total, total_err);
            }
            const double m = 0.5 * (p.a + p.b);
            const double hq = 0.25 * (m - p.a);
            detail::SimpsonPanel left{p.a, m, p.fa, eval(p.a + hq), p.fl, eval(p.a + 3.0 * hq), p.fm,
                                      p.depth + 1, 0, 0, 0};
            detail::SimpsonPanel right{m, p.b, p.fm, eval(m + hq), p.fr, eval(m + 3.0 * hq), p.fb,
                                       p.depth + 1, 0, 0, 0};
            left.estimate();
            right.estimate();
            total += left.value() + right.value() - p.value();
            total_err += left.error + right.error - p.error;
            open.push_back(left);
            std::push_heap(open.begin(), open.end(), worse);
            open.push_back(right);
            std::push_heap(open.begin(), open.end(), worse);
        }
        resum();
    }

    out.value = total;
    out.error = total_err;
    if (out.error > std::max(opt.rtol * std::abs(out.value), opt.atol)) {
        throw QuadratureError("quad_adaptive: maximum depth exceeded", out.value, out.error);
    }
    return out;
}

template <class F>
QuadResult quad_adaptive(F&& f, double a, double b, double rtol,
                         std::initializer_list<double> split_points = {}) {
    QuadOptions opt;
    opt.rtol = rtol;
    return quad_adaptive(std::forward<F>(f), a, b,
                         std::span<const double>(split_points.begin(), split_points.size()), opt);
}

} // namespace tdldos
