#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "errors.hpp"

namespace nlsgraph {

struct QuadratureSpec {
    double rel_tol = 1e-11;
    int max_refinements = 30;  ///< maximum halving depth of any subinterval
};

inline void validate(const QuadratureSpec& spec) {
    if (!(spec.rel_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: rel_tol must be positive");
    if (spec.max_refinements < 1) throw std::invalid_argument("QuadratureSpec: max_refinements must be >= 1");
}

namespace detail {

template <class F>
double gauss_apply(const F& f, double a, double b) {
    return boost::math::quadrature::gauss<double, 16>::integrate(f, a, b);
}

}  // namespace detail

/// Globally adaptive Gauss-Legendre quadrature of a smooth integrand.
/// Each interval carries the 16-point estimate on its two halves; the
/// interval whose halves disagree most with the whole is bisected until
/// the summed disagreement drops below rel_tol relative to the total.
template <class F>
double adaptive_integrate(const F& f, double a, double b, const QuadratureSpec& spec = {}) {
    if (a == b) return 0.0;
    struct Piece {
        double a, b;
        double left, right;  // 16-point estimates on the two halves
        double err;          // |left + right - coarse|
        int depth;
        [[nodiscard]] double value() const { return left + right; }
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    auto make = [&](double lo, double hi, double coarse, int depth) {
        const double mid = 0.5 * (lo + hi);
        Piece p{lo, hi, detail::gauss_apply(f, lo, mid), detail::gauss_apply(f, mid, hi), 0.0, depth};
        p.err = std::abs(p.value() - coarse);
        return p;
    };

    std::priority_queue<Piece> heap;
    heap.push(make(a, b, detail::gauss_apply(f, a, b), 0));
    double total = heap.top().value();
    double err = heap.top().err;

    constexpr std::size_t max_pieces = 20000;
    while (err > spec.rel_tol * std::abs(total) && err > 1e-300) {
        const Piece worst = heap.top();
        if (worst.depth >= spec.max_refinements || heap.size() >= max_pieces) {
            throw numerical_error("adaptive_integrate: no convergence within the refinement budget");
        }
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Piece lp = make(worst.a, mid, worst.left, worst.depth + 1);
        const Piece rp = make(mid, worst.b, worst.right, worst.depth + 1);
        total += lp.value() + rp.value() - worst.value();
        err += lp.err + rp.err - worst.err;
        heap.push(lp);
        heap.push(rp);
        if (err < 0.0) err = 0.0;
    }
    // Re-sum to shed the drift of the running update.
    double sum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value();
        heap.pop();
    }
    return sum;
}

}  // namespace nlsgraph
