// Serial vs OpenMP polynomial product on random dense-ish inputs.

#include <chrono>
#include <cstdio>
#include <random>

#include "CLI11.hpp"
#include "multigraded/kernels.hpp"

using namespace mg;

namespace {

GradedPolynomial random_polynomial(std::mt19937& rng, const ChartPtr& chart, int terms) {
    std::uniform_int_distribution<int> exponent(0, 3), coin(0, 1), coefficient(-9, 9);
    GradedPolynomial f(chart);
    for (int t = 0; t < terms; ++t) {
        Exponents e(chart->size(), 0);
        for (std::size_t i = 0; i < chart->size(); ++i) e[i] = chart->is_odd(i) ? coin(rng) : exponent(rng);
        f.add_term(e, coefficient(rng) + 10);
    }
    return f;
}

template <class Kernel>
double seconds(int repeats, Kernel kernel) {
    const auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) kernel();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial product benchmark"};
    int terms = 400, repeats = 3;
    unsigned seed = 1;
    app.add_option("--terms", terms, "terms per factor");
    app.add_option("--repeats", repeats, "timed repetitions");
    app.add_option("--seed", seed, "random seed");
    CLI11_PARSE(app, argc, argv);

    auto chart = make_chart(2, {{"x", {0, 0}}, {"y", {0, 0}}, {"z", {0, 0}}, {"a", {1, 0}}, {"b", {0, 1}},
                                {"c", {1, 0}}, {"d", {0, 1}}, {"u", {1, 1}}});
    std::mt19937 rng(seed);
    const auto f = random_polynomial(rng, chart, terms), g = random_polynomial(rng, chart, terms);

    TermMap serial, parallel;
    const double ts = seconds(repeats, [&] { serial = kernels::multiply_serial(*chart, f.terms(), g.terms()); });
    const double tp = seconds(repeats, [&] { parallel = kernels::multiply_parallel(*chart, f.terms(), g.terms()); });
    std::printf("terms %zu x %zu -> %zu, threads %d\n", f.size(), g.size(), serial.size(), kernels::max_threads());
    std::printf("serial   %.4fs\nparallel %.4fs (speedup %.2f)\n", ts, tp, ts / tp);
    std::printf("results %s\n", serial == parallel ? "agree" : "DIFFER");
    return serial == parallel ? 0 : 1;
}
