#pragma once

// Adaptive Gauss–Kronrod (G10/K21) quadrature over finite intervals and the whole
// real line. The value type T may be double, std::complex<double> or a fixed-size
// Eigen vector; errors are measured in the max-norm over components.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <vector>

namespace biphoton::quad {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

template <class T>
struct Result {
    T value{};
    double error = 0;
    long evaluations = 0;
    int intervals = 0;
    bool converged = true;
};

// How a segment's local variable u maps onto the integration variable x.
enum class Map {
    Identity,  // x = u
    UpperTail, // x = W/u, u ∈ (0, 1]
    LowerTail  // x = −W/u
};

struct Segment {
    double a = 0, b = 0;
    Map map = Map::Identity;
    double scale = 1;  // W for the tail maps
};

struct Tolerance {
    double rel = 1e-8;
    double abs = 0;
    int max_intervals = 4000;
};

namespace detail {

inline constexpr double xgk[11] = {0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
                                   0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
                                   0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
                                   0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
                                   0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
                                   0.0};
inline constexpr double wgk[11] = {0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
                                   0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
                                   0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
                                   0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
                                   0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
                                   0.149445554002916905664936468389821};
inline constexpr double wg[5] = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                                 0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                                 0.295524224714752870173892994651338};

template <class T>
struct Piece {
    Segment seg;
    T value;
    double error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

template <class F>
auto eval_mapped(F& f, const Segment& s, double u) {
    switch (s.map) {
        case Map::Identity: return f(u);
        case Map::UpperTail: return decltype(f(u))(f(s.scale / u) * (s.scale / (u * u)));
        case Map::LowerTail: return decltype(f(u))(f(-s.scale / u) * (s.scale / (u * u)));
    }
    return f(u);
}

template <class T, class F>
Piece<T> gk21(F& f, const Segment& s, long& evals) {
    const double c = 0.5 * (s.a + s.b);
    const double h = 0.5 * (s.b - s.a);
    T fv[21];
    fv[0] = eval_mapped(f, s, c);
    for (int j = 0; j < 10; ++j) {
        fv[1 + 2 * j] = eval_mapped(f, s, c - h * xgk[j]);
        fv[2 + 2 * j] = eval_mapped(f, s, c + h * xgk[j]);
    }
    evals += 21;
    T kron = fv[0] * wgk[10];
    T gauss = fv[0] * 0.0;
    // Odd-indexed Kronrod abscissae are the G10 nodes.
    for (int j = 0; j < 10; ++j) {
        const T pair = fv[1 + 2 * j] + fv[2 + 2 * j];
        kron = kron + pair * wgk[j];
        if (j % 2 == 1) gauss = gauss + pair * wg[j / 2];
    }
    const T mean = kron * 0.5;
    double resasc = wgk[10] * magnitude(T(fv[0] - mean));
    double resabs = wgk[10] * magnitude(fv[0]);
    for (int j = 0; j < 10; ++j) {
        resasc += wgk[j] * (magnitude(T(fv[1 + 2 * j] - mean)) + magnitude(T(fv[2 + 2 * j] - mean)));
        resabs += wgk[j] * (magnitude(fv[1 + 2 * j]) + magnitude(fv[2 + 2 * j]));
    }
    const double ah = std::abs(h);
    resasc *= ah;
    resabs *= ah;
    double err = magnitude(T((kron - gauss) * h));
    if (resasc != 0 && err != 0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50 * std::numeric_limits<double>::epsilon()))
        err = std::max(50 * std::numeric_limits<double>::epsilon() * resabs, err);
    return {s, T(kron * h), err};
}

}  // namespace detail

// Globally adaptive integration over a union of segments: the piece with the
// largest error estimate is bisected until the total error meets the tolerance.
template <class T, class F>
Result<T> integrate_segments(F&& f, const std::vector<Segment>& segments, const Tolerance& tol) {
    Result<T> r;
    std::priority_queue<detail::Piece<T>> heap;
    bool have_total = false;
    T total{};
    double err = 0;
    for (const auto& s : segments) {
        if (!(s.b > s.a)) continue;
        auto p = detail::gk21<T>(f, s, r.evaluations);
        total = have_total ? T(total + p.value) : p.value;
        have_total = true;
        err += p.error;
        heap.push(std::move(p));
    }
    if (!have_total) {
        r.value = T{};
        return r;
    }
    while (err > std::max(tol.abs, tol.rel * magnitude(total))) {
        if (static_cast<int>(heap.size()) >= tol.max_intervals) {
            r.converged = false;
            break;
        }
        auto worst = heap.top();
        const double mid = 0.5 * (worst.seg.a + worst.seg.b);
        if (!(mid > worst.seg.a && mid < worst.seg.b)) {
            r.converged = false;
            break;
        }
        heap.pop();
        Segment left = worst.seg, right = worst.seg;
        left.b = mid;
        right.a = mid;
        auto pl = detail::gk21<T>(f, left, r.evaluations);
        auto pr = detail::gk21<T>(f, right, r.evaluations);
        total = total + (pl.value + pr.value - worst.value);
        err += pl.error + pr.error - worst.error;
        heap.push(std::move(pl));
        heap.push(std::move(pr));
    }
    // Re-sum from scratch to drop the drift of incremental updates.
    r.intervals = static_cast<int>(heap.size());
    std::vector<detail::Piece<T>> pieces;
    pieces.reserve(heap.size());
    while (!heap.empty()) {
        pieces.push_back(heap.top());
        heap.pop();
    }
    std::sort(pieces.begin(), pieces.end(), [](const auto& x, const auto& y) {
        if (x.seg.map != y.seg.map) return x.seg.map < y.seg.map;
        return x.seg.a < y.seg.a;
    });
    r.value = pieces.front().value;
    r.error = pieces.front().error;
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        r.value = r.value + pieces[i].value;
        r.error += pieces[i].error;
    }
    return r;
}

inline std::vector<double> clean_breakpoints(std::vector<double> pts) {
    pts.erase(std::remove_if(pts.begin(), pts.end(), [](double x) { return !std::isfinite(x); }), pts.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Splits [a, b] at the breakpoints that fall strictly inside.
inline std::vector<Segment> finite_segments(double a, double b, const std::vector<double>& breakpoints) {
    std::vector<Segment> out;
    double lo = a;
    for (double p : clean_breakpoints(breakpoints)) {
        if (p > lo && p < b) {
            out.push_back({lo, p});
            lo = p;
        }
    }
    out.push_back({lo, b});
    return out;
}

// Core [−W, W] plus (optionally) both tails, each split at the breakpoints.
inline std::vector<Segment> line_segments(double W, const std::vector<double>& breakpoints, bool tails) {
    auto out = finite_segments(-W, W, breakpoints);
    if (!tails) return out;
    std::vector<double> upper, lower;
    for (double p : breakpoints) {
        if (p > W) upper.push_back(W / p);
        if (p < -W) lower.push_back(-W / p);
    }
    for (const auto& s : finite_segments(0.0, 1.0, upper)) out.push_back({s.a, s.b, Map::UpperTail, W});
    for (const auto& s : finite_segments(0.0, 1.0, lower)) out.push_back({s.a, s.b, Map::LowerTail, W});
    return out;
}

template <class T, class F>
Result<T> integrate_interval(F&& f, double a, double b, const Tolerance& tol,
                             const std::vector<double>& breakpoints = {}) {
    return integrate_segments<T>(f, finite_segments(a, b, breakpoints), tol);
}

template <class T, class F>
Result<T> integrate_line(F&& f, double W, bool tails, const Tolerance& tol,
                         const std::vector<double>& breakpoints = {}) {
    return integrate_segments<T>(f, line_segments(W, breakpoints, tails), tol);
}

// ∬ f(x, y) dy dx as nested line integrals. inner_breaks(x) supplies the
// breakpoints of the inner integral at fixed x.
template <class T, class F, class B>
Result<T> integrate_plane(F&& f, double W, bool tails, const Tolerance& tol, const std::vector<double>& outer_breaks,
                          B&& inner_breaks) {
    Tolerance inner = tol;
    inner.rel = tol.rel * 0.1;
    inner.abs = tol.abs * 0.01;
    long inner_evals = 0;
    bool inner_ok = true;
    auto g = [&](double x) {
        auto r = integrate_line<T>([&](double y) { return f(x, y); }, W, tails, inner, inner_breaks(x));
        inner_evals += r.evaluations;
        inner_ok = inner_ok && r.converged;
        return r.value;
    };
    auto r = integrate_line<T>(g, W, tails, tol, outer_breaks);
    r.evaluations = inner_evals;
    r.converged = r.converged && inner_ok;
    r.error += inner.rel * magnitude(r.value);
    return r;
}

}  // namespace biphoton::quad
