#include "beliefq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>
#include <stdexcept>
#include <thread>

#include "beliefq/errors.hpp"

namespace beliefq::num {

namespace {

// Gauss-Kronrod 7-15 pair (QUADPACK constants); odd indices are the
// embedded Gauss nodes.
constexpr double kGkNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double integral;
    double error;

    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double lo_vals[7], hi_vals[7];
    const double fc = f(mid);
    double kron = kKronrodW[7] * fc;
    double gauss = kGaussW[3] * fc;
    double resabs = kKronrodW[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGkNodes[i];
        lo_vals[i] = f(mid - dx);
        hi_vals[i] = f(mid + dx);
        const double pair = lo_vals[i] + hi_vals[i];
        kron += kKronrodW[i] * pair;
        resabs += kKronrodW[i] * (std::abs(lo_vals[i]) + std::abs(hi_vals[i]));
        if (i % 2 == 1) {
            gauss += kGaussW[(i - 1) / 2] * pair;
        }
    }
    const double mean = 0.5 * kron;
    double resasc = kKronrodW[7] * std::abs(fc - mean);
    for (int i = 0; i < 7; ++i) {
        resasc += kKronrodW[i] * (std::abs(lo_vals[i] - mean) + std::abs(hi_vals[i] - mean));
    }
    resasc *= std::abs(half);
    resabs *= std::abs(half);
    kron *= half;
    gauss *= half;
    // QUADPACK error rescaling: |K - G| alone underestimates on hard panels
    double err = std::abs(kron - gauss);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double round_floor = 50.0 * 1.1e-16 * resabs;
    if (round_floor > 0.0) {
        err = std::max(err, round_floor);
    }
    return {a, b, kron, err};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
    if (a == b) {
        return 0.0;
    }
    // globally adaptive: always bisect the panel with the worst error estimate
    std::vector<Panel> heap{gk15(f, a, b)};
    double total = heap.front().integral;
    double total_err = heap.front().error;
    constexpr int kMaxPanels = 2048;
    while (static_cast<int>(heap.size()) < kMaxPanels) {
        const double tol = rel_tol * std::max(std::abs(total), 1e-300);
        if (total_err <= tol) break;
        std::pop_heap(heap.begin(), heap.end());
        const Panel worst = heap.back();
        // roundoff floor and width underflow both mean no further progress
        if (worst.error <= 1e-16 * std::abs(total) ||
            worst.b - worst.a <= 1e-15 * std::max(std::abs(worst.a), std::abs(worst.b))) {
            std::push_heap(heap.begin(), heap.end());
            break;
        }
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = gk15(f, worst.a, mid);
        const Panel right = gk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
    }
    // resum to shed the incremental-update drift
    double sum = 0.0;
    for (const Panel& p : heap) sum += p.integral;
    return sum;
}

double integrate_split(const std::function<double(double)>& f, double a, double b,
                       std::span<const double> splits, double rel_tol) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double s : splits) {
        if (s > a && s < b) {
            pts.push_back(s);
        }
    }
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        total += integrate(f, pts[i], pts[i + 1], rel_tol);
    }
    return total;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw std::invalid_argument("bisect: no sign change on bracket");
    }
    for (int it = 0; it < 220 && hi - lo > xtol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Maximum golden_max(const std::function<double(double)>& f, double a, double b,
                   double xtol) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

Maximum guarded_max(const std::function<double(double)>& f, double a, double b,
                    int seeds, double xtol) {
    if (seeds < 4) seeds = 4;
    const int n = seeds;
    std::vector<double> xs(n + 1), vs(n + 1);
    for (int i = 0; i <= n; ++i) {
        xs[i] = a + (b - a) * static_cast<double>(i) / n;
        vs[i] = f(xs[i]);
    }

    std::vector<int> peaks;
    for (int i = 0; i <= n; ++i) {
        const bool up = (i == 0) || vs[i] > vs[i - 1];
        const bool down = (i == n) || vs[i] > vs[i + 1];
        if (up && down) {
            peaks.push_back(i);
        }
    }
    if (peaks.empty()) {
        // flat scan; fall through with the best sample
        peaks.push_back(static_cast<int>(std::max_element(vs.begin(), vs.end()) - vs.begin()));
    }

    auto refine = [&](int i) {
        const double lo = xs[std::max(i - 1, 0)];
        const double hi = xs[std::min(i + 1, n)];
        return golden_max(f, lo, hi, xtol);
    };

    std::sort(peaks.begin(), peaks.end(), [&](int i, int j) { return vs[i] > vs[j]; });
    Maximum best = refine(peaks[0]);
    if (peaks.size() > 1 && std::abs(peaks[1] - peaks[0]) >= 2) {
        Maximum second = refine(peaks[1]);
        if (second.value > best.value) std::swap(best, second);
        const double scale = std::max({std::abs(best.value), std::abs(second.value), 1e-30});
        if (best.value - second.value > 1e-6 * scale) {
            throw NonUnimodal(best.x, best.value, second.x, second.value);
        }
    }
    return best;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const std::size_t workers = std::min<std::size_t>(hw, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace beliefq::num
