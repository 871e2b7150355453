#include "wedge/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <future>
#include <map>
#include <mutex>
#include <numbers>

namespace wedge {

namespace {
std::mutex rule_mu;
std::map<int, GLRule> rule_cache;

// Newton iteration on P_n with the Chebyshev-angle initial guess.
GLRule make_rule(int n) {
    GLRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

std::atomic<int> g_threads{1};
} // namespace

const GLRule& gauss_legendre(int order) {
    std::lock_guard lk(rule_mu);
    auto it = rule_cache.find(order);
    if (it == rule_cache.end()) it = rule_cache.emplace(order, make_rule(order)).first;
    return it->second;
}

GLRule gauss_legendre(int order, double a, double b) {
    const GLRule& base = gauss_legendre(order);
    GLRule r = base;
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < order; ++i) {
        r.x[i] = mid + half * base.x[i];
        r.w[i] = half * base.w[i];
    }
    return r;
}

cplx pairwise_sum(std::span<const cplx> t) {
    if (t.size() <= 8) {
        cplx s = 0;
        for (auto v : t) s += v;
        return s;
    }
    size_t h = t.size() / 2;
    return pairwise_sum(t.first(h)) + pairwise_sum(t.subspan(h));
}

void set_thread_count(int n) { g_threads = std::max(1, n); }

int thread_count() {
    static std::once_flag once;
    std::call_once(once, [] {
        if (const char* e = std::getenv("WEDGELAB_THREADS")) {
            int n = std::atoi(e);
            if (n > 0) g_threads = n;
        }
    });
    return g_threads;
}

cplx integrate_1d(const std::function<cplx(double)>& f, double a, double b, int order) {
    GLRule r = gauss_legendre(order, a, b);
    std::vector<cplx> terms(order);
    for (int i = 0; i < order; ++i) terms[i] = r.w[i] * f(r.x[i]);
    return pairwise_sum(terms);
}

TensorResult integrate_tensor(const std::function<cplx(std::span<const double>)>& f,
                              int dim, double theta_max, std::span<const int> orders) {
    std::vector<GLRule> axis(dim);
    for (int d = 0; d < dim; ++d) {
        int ord = orders[std::min<size_t>(d, orders.size() - 1)];
        axis[d] = gauss_legendre(ord, -theta_max, theta_max);
    }

    int n0 = (int)axis[0].x.size();
    struct Partial {
        cplx val{};
        double l1 = 0, tail = 0;
    };
    std::vector<Partial> per_outer(n0);

    auto run_outer = [&](int i0) {
        std::vector<double> pt(dim);
        std::vector<int> idx(dim, 0);
        pt[0] = axis[0].x[i0];
        size_t inner = 1;
        for (int d = 1; d < dim; ++d) inner *= axis[d].x.size();
        std::vector<cplx> terms;
        terms.reserve(inner);
        Partial p;
        for (size_t k = 0; k < inner; ++k) {
            size_t rem = k;
            double w = axis[0].w[i0];
            bool boundary = (i0 == 0 || i0 == n0 - 1);
            for (int d = dim - 1; d >= 1; --d) {
                size_t nd = axis[d].x.size();
                size_t id = rem % nd;
                rem /= nd;
                pt[d] = axis[d].x[id];
                w *= axis[d].w[id];
                if (id == 0 || id == nd - 1) boundary = true;
            }
            cplx v = w * f(pt);
            terms.push_back(v);
            p.l1 += std::abs(v);
            if (boundary) p.tail = std::max(p.tail, std::abs(f(pt)));
        }
        p.val = pairwise_sum(terms);
        per_outer[i0] = p;
    };

    int nt = std::min(thread_count(), n0);
    if (nt <= 1) {
        for (int i = 0; i < n0; ++i) run_outer(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::future<void>> fut;
        for (int t = 0; t < nt; ++t)
            fut.push_back(std::async(std::launch::async, [&] {
                for (int i = next++; i < n0; i = next++) run_outer(i);
            }));
        for (auto& ft : fut) ft.get();
    }

    TensorResult out;
    std::vector<cplx> vals(n0);
    for (int i = 0; i < n0; ++i) {
        vals[i] = per_outer[i].val;
        out.l1 += per_outer[i].l1;
        out.tail_bound = std::max(out.tail_bound, per_outer[i].tail);
    }
    out.value = pairwise_sum(vals);
    // boundary magnitude times the area of the box faces: crude but honest
    out.tail_bound *= 2 * dim * std::pow(2 * theta_max, dim - 1);
    return out;
}

} // namespace wedge
