#include "carleson/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "carleson/errors.hpp"

namespace carleson {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1], positive half.  The
// embedded 7-point Gauss rule uses the odd-index Kronrod nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct RuleResult {
    double value;
    double error;
};

RuleResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * kXgk[i]);
        fv[14 - i] = f(center + half * kXgk[i]);
    }
    fv[7] = f(center);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double pair = fv[i] + fv[14 - i];
        resk += kWgk[i] * pair;
        if (i % 2 == 1) resg += kWg[i / 2] * pair;
    }
    resk += kWgk[7] * fv[7];
    resg += kWg[3] * fv[7];
    if (!std::isfinite(resk)) {
        throw QuadratureFailure("non-finite integrand values on an interval");
    }
    // QUADPACK-style rescaled error estimate.
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (int i = 0; i < 7; ++i) {
        resasc += kWgk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));
    }
    resasc *= half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    return {resk * half, err};
}

struct Interval {
    double a, b, value, error;
};
struct IntervalOrder {
    bool operator()(const Interval& x, const Interval& y) const {
        return x.error < y.error;
    }
};

struct Cell {
    Rect box;
    double value, error;
};
struct CellOrder {
    bool operator()(const Cell& x, const Cell& y) const { return x.error < y.error; }
};

RuleResult gk15_2d(const std::function<double(double, double)>& f, const Rect& box) {
    const double cx = 0.5 * (box.x0 + box.x1), hx = 0.5 * (box.x1 - box.x0);
    const double cy = 0.5 * (box.y0 + box.y1), hy = 0.5 * (box.y1 - box.y0);
    double nx[15], ny[15], wx[15], wy[15];
    double gx[15], gy[15];
    for (int i = 0; i < 7; ++i) {
        nx[i] = cx - hx * kXgk[i];
        nx[14 - i] = cx + hx * kXgk[i];
        ny[i] = cy - hy * kXgk[i];
        ny[14 - i] = cy + hy * kXgk[i];
        wx[i] = wx[14 - i] = kWgk[i];
        wy[i] = wy[14 - i] = kWgk[i];
        gx[i] = gx[14 - i] = i % 2 == 1 ? kWg[i / 2] : 0.0;
        gy[i] = gy[14 - i] = gx[i];
    }
    nx[7] = cx;
    ny[7] = cy;
    wx[7] = wy[7] = kWgk[7];
    gx[7] = gy[7] = kWg[3];
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 15; ++i) {
        for (int j = 0; j < 15; ++j) {
            const double v = f(nx[i], ny[j]);
            resk += wx[i] * wy[j] * v;
            resg += gx[i] * gy[j] * v;
        }
    }
    if (!std::isfinite(resk)) {
        throw QuadratureFailure("non-finite integrand values on a cell");
    }
    const double scale = hx * hy;
    return {resk * scale, std::abs(resk - resg) * scale};
}

} // namespace

QuadEstimate integrate_1d(const std::function<double(double)>& f, double a,
                          double b, const QuadOptions& opt) {
    QuadEstimate est;
    if (a == b) {
        est.converged = true;
        return est;
    }
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::priority_queue<Interval, std::vector<Interval>, IntervalOrder> heap;
    RuleResult whole = gk15(f, a, b);
    est.evaluations = 15;
    heap.push({a, b, whole.value, whole.error});
    double total = whole.value, toterr = whole.error;
    while (heap.size() < opt.max_intervals) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (toterr <= target) break;
        const Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const RuleResult left = gk15(f, worst.a, mid);
        const RuleResult right = gk15(f, mid, worst.b);
        est.evaluations += 30;
        total += left.value + right.value - worst.value;
        toterr += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.value, left.error});
        heap.push({mid, worst.b, right.value, right.error});
    }
    est.value = sign * total;
    est.error = toterr;
    est.converged = toterr <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    return est;
}

QuadEstimate integrate_rect2d(const std::function<double(double, double)>& f,
                              const Rect& box, const QuadOptions& opt) {
    QuadEstimate est;
    if (box.x0 >= box.x1 || box.y0 >= box.y1) {
        throw Error("integrate_rect2d: degenerate rectangle");
    }
    std::priority_queue<Cell, std::vector<Cell>, CellOrder> heap;
    RuleResult whole = gk15_2d(f, box);
    est.evaluations = 225;
    heap.push({box, whole.value, whole.error});
    double total = whole.value, toterr = whole.error;
    while (heap.size() < opt.max_intervals) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (toterr <= target) break;
        const Cell worst = heap.top();
        heap.pop();
        const double mx = 0.5 * (worst.box.x0 + worst.box.x1);
        const double my = 0.5 * (worst.box.y0 + worst.box.y1);
        const Rect quarters[4] = {
            {worst.box.x0, mx, worst.box.y0, my},
            {mx, worst.box.x1, worst.box.y0, my},
            {worst.box.x0, mx, my, worst.box.y1},
            {mx, worst.box.x1, my, worst.box.y1},
        };
        total -= worst.value;
        toterr -= worst.error;
        for (const Rect& q : quarters) {
            const RuleResult part = gk15_2d(f, q);
            est.evaluations += 225;
            total += part.value;
            toterr += part.error;
            heap.push({q, part.value, part.error});
        }
    }
    est.value = total;
    est.error = toterr;
    est.converged = toterr <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    return est;
}

} // namespace carleson
