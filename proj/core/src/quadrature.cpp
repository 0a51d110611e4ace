#include "casimir/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace casimir::quadrature {

namespace {

std::mutex cache_mutex;

Rule make_legendre(int n) {
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(n);
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) gsl_integration_glfixed_point(-1.0, 1.0, i, &r.x[i], &r.w[i], t);
    gsl_integration_glfixed_table_free(t);
    return r;
}

Rule make_laguerre(int n) {
    // weight (x-a)^alpha e^{-b(x-a)} with a=0, b=1, alpha=0
    gsl_integration_fixed_workspace* w =
        gsl_integration_fixed_alloc(gsl_integration_fixed_laguerre, n, 0.0, 1.0, 0.0, 0.0);
    if (!w) throw std::runtime_error("gauss_laguerre: workspace allocation failed");
    Rule r;
    r.x.assign(gsl_integration_fixed_nodes(w), gsl_integration_fixed_nodes(w) + n);
    r.w.assign(gsl_integration_fixed_weights(w), gsl_integration_fixed_weights(w) + n);
    gsl_integration_fixed_free(w);
    return r;
}

const Rule& cached(std::map<int, std::unique_ptr<Rule>>& cache, int n, Rule (*make)(int)) {
    if (n < 1) throw std::invalid_argument("quadrature: order must be >= 1");
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<Rule>(make(n))).first;
    return *it->second;
}

}  // namespace

const Rule& gauss_legendre(int n) {
    static std::map<int, std::unique_ptr<Rule>> cache;
    return cached(cache, n, make_legendre);
}

const Rule& gauss_laguerre(int n) {
    static std::map<int, std::unique_ptr<Rule>> cache;
    return cached(cache, n, make_laguerre);
}

Rule gauss_legendre_on(int n, double a, double b) {
    const Rule& base = gauss_legendre(n);
    Rule r = base;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        r.x[i] = mid + half * base.x[i];
        r.w[i] = half * base.w[i];
    }
    return r;
}

}  // namespace casimir::quadrature
