#include "multigraded/kernels.hpp"

#include <atomic>
#include <iterator>
#include <vector>

#ifdef MULTIGRADED_OPENMP
#include <omp.h>
#endif

namespace mg::kernels {

namespace {

std::atomic<std::size_t> g_threshold{4096};

inline void accumulate_product(const GradedChart& chart, const Exponents& a, const Rational& ca,
                               const Exponents& b, const Rational& cb, TermMap& out) {
    const int sign = monomial_product_sign(chart, a, b);
    if (sign == 0) return;
    Exponents e(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
    Rational c = ca * cb;
    if (sign < 0) c = -c;
    auto [it, inserted] = out.try_emplace(std::move(e), c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) out.erase(it);
    }
}

void merge_into(TermMap& target, TermMap&& source) {
    for (auto& [e, c] : source) {
        auto [it, inserted] = target.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) target.erase(it);
        }
    }
}

}  // namespace

TermMap multiply_serial(const GradedChart& chart, const TermMap& f, const TermMap& g) {
    TermMap out;
    for (const auto& [a, ca] : f)
        for (const auto& [b, cb] : g) accumulate_product(chart, a, ca, b, cb, out);
    return out;
}

TermMap multiply_parallel(const GradedChart& chart, const TermMap& f, const TermMap& g) {
#ifdef MULTIGRADED_OPENMP
    std::vector<const TermMap::value_type*> left;
    left.reserve(f.size());
    for (const auto& term : f) left.push_back(&term);
    const long count = static_cast<long>(left.size());

    std::vector<TermMap> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
    {
        TermMap& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 8)
        for (long i = 0; i < count; ++i) {
            const auto& [a, ca] = *left[static_cast<std::size_t>(i)];
            for (const auto& [b, cb] : g) accumulate_product(chart, a, ca, b, cb, local);
        }
    }
    TermMap out;
    for (TermMap& p : partial) {
        if (out.empty())
            out = std::move(p);
        else
            merge_into(out, std::move(p));
    }
    return out;
#else
    return multiply_serial(chart, f, g);
#endif
}

std::size_t parallel_threshold() { return g_threshold.load(); }

void set_parallel_threshold(std::size_t pairs) { g_threshold.store(pairs); }

int max_threads() {
#ifdef MULTIGRADED_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace mg::kernels
