#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace propest {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// 0 means one worker per hardware thread.
unsigned resolve_threads(unsigned requested) noexcept;

/// Fixed block size for reductions; the partition never depends on the
/// number of workers, so results are bit-identical for any thread count.
inline constexpr std::size_t kReductionBlock = 1024;

/// Runs body(i) for i in [0, n) on up to `threads` workers. Exceptions from
/// workers are rethrown on the caller (the first one by index order wins).
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
    threads = std::max(1u, std::min<unsigned>(resolve_threads(threads),
                                              static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
                failed.store(true);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

/// Compensated sum of f(i) for i in [0, n).
template <class F>
double parallel_sum(std::size_t n, unsigned threads, F&& f) {
    const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
    std::vector<double> partial(blocks, 0.0);
    parallel_for(blocks, threads, [&](std::size_t blk) {
        CompensatedSum s;
        const std::size_t hi = std::min(n, (blk + 1) * kReductionBlock);
        for (std::size_t i = blk * kReductionBlock; i < hi; ++i) s.add(f(i));
        partial[blk] = s.value();
    });
    CompensatedSum total;
    for (double v : partial) total.add(v);
    return total.value();
}

}  // namespace propest
