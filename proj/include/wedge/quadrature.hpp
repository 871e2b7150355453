#pragma once
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace wedge {

using cplx = std::complex<double>;

// Gauss-Legendre nodes/weights on [-1,1], cached per order.
struct GLRule {
    std::vector<double> x, w;
};
const GLRule& gauss_legendre(int order);

// Nodes/weights mapped to [a,b].
GLRule gauss_legendre(int order, double a, double b);

// Order-independent accumulation used everywhere so results are reproducible
// regardless of how work is chunked across threads.
cplx pairwise_sum(std::span<const cplx> terms);

// Global worker count (1 = serial). Set from CLI --threads or WEDGELAB_THREADS.
void set_thread_count(int n);
int thread_count();

// 1D integral of f over [a,b] with an n-point GL rule.
cplx integrate_1d(const std::function<cplx(double)>& f, double a, double b, int order);

struct TensorResult {
    cplx value;
    double l1 = 0;        // sum of |w_i f(x_i)|, a scale for relative checks
    double tail_bound = 0; // crude bound from the boundary faces of the box
};

// Tensor-product GL integral of f over [-theta_max, theta_max]^dim with
// per-axis orders. Outer axis is parallelised in fixed chunks; per-chunk
// partial sums are combined in index order so the result is deterministic.
TensorResult integrate_tensor(const std::function<cplx(std::span<const double>)>& f,
                              int dim, double theta_max, std::span<const int> orders);

} // namespace wedge
