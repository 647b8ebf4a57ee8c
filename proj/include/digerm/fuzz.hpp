#pragma once

#include "digerm/subdivision.hpp"

#include <atomic>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace digerm {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

/// One random applicable op for the current pipeline object.  Grid ops are
/// only offered while the object is still precubical.
inline std::optional<SubdivisionOp> random_op(std::mt19937_64& rng,
                                              SubdivisionPipeline& pipe)
{
    std::vector<SubdivisionOp> candidates;
    if (pipe.precubical && pipe.precubical->max_dim() >= 1) {
        SubdivisionOp grid;
        grid.kind = SubdivisionOp::Kind::Grid;
        grid.factors.assign(static_cast<std::size_t>(pipe.precubical->max_dim()),
                            static_cast<int>(rng() % 3) + 1);
        candidates.push_back(std::move(grid));
    }
    const GlobularComplex& x = pipe.realized();
    std::vector<std::string> edges, lenses;
    for (const auto& c : x.cells) {
        if (c.dim == 1)
            edges.push_back(c.id);
        if (c.dim == 2 && c.flow) {
            bool plus = false, minus = false, other = false;
            for (const auto& [coef, chain] : c.flow->terms) {
                (void)chain;
                if (coef == 1 && !plus)
                    plus = true;
                else if (coef == -1 && !minus)
                    minus = true;
                else
                    other = true;
            }
            if (plus && minus && !other)
                lenses.push_back(c.id);
        }
    }
    if (!edges.empty()) {
        SubdivisionOp e;
        e.kind = SubdivisionOp::Kind::Edge;
        e.cell = edges[rng() % edges.size()];
        e.k = static_cast<int>(rng() % 3) + 1;
        candidates.push_back(std::move(e));
    }
    if (!lenses.empty()) {
        SubdivisionOp l;
        l.kind = SubdivisionOp::Kind::Lens;
        l.cell = lenses[rng() % lenses.size()];
        candidates.push_back(std::move(l));
    }
    if (candidates.empty())
        return std::nullopt;
    return candidates[rng() % candidates.size()];
}

struct FuzzInstanceResult {
    bool ok = true;
    std::string log;
};

/// One full fuzz instance: random precubical set, realization, structural
/// validation, flow-oracle agreement, then a random op sequence with the
/// invariance comparison and a second oracle pass on the subdivided complex.
inline FuzzInstanceResult fuzz_instance(std::uint64_t seed, std::size_t max_cubes = 200,
                                        int max_ops = 5)
{
    FuzzInstanceResult res;
    std::ostringstream log;
    auto fail = [&](const std::string& msg) {
        res.ok = false;
        log << "FAIL: " << msg << "\n";
    };
    try {
        std::mt19937_64 rng(seed);
        PrecubicalSet k = random_precubical(rng, max_cubes);
        ValidationReport vk = validate(k);
        if (!vk.ok()) {
            fail("generated precubical set invalid:\n" + vk.str());
            res.log = log.str();
            return res;
        }
        GlobularComplex x = realize(k);
        ValidationReport vx = validate_complex(x);
        if (!vx.ok()) {
            fail("realized complex invalid:\n" + vx.str());
            res.log = log.str();
            return res;
        }
        OracleReport oracle = oracle_check(x);
        if (!oracle.pass)
            fail("flow oracle mismatch on realized complex (" +
                 std::to_string(oracle.mismatches.size()) + " entries)");

        SubdivisionPipeline pipe = SubdivisionPipeline::from(k);
        std::vector<SubdivisionOp> ops;
        const int nops = static_cast<int>(rng() % static_cast<std::uint64_t>(max_ops + 1));
        for (int i = 0; i < nops; ++i) {
            auto op = random_op(rng, pipe);
            if (!op)
                break;
            pipe.apply(*op);
            ops.push_back(*op);
        }
        const GlobularComplex& y = pipe.realized();
        ValidationReport vy = validate_complex(y);
        if (!vy.ok()) {
            std::string opdesc;
            for (const auto& o : ops)
                opdesc += " " + o.describe();
            fail("subdivided complex invalid after" + opdesc + ":\n" + vy.str());
        } else {
            InvarianceReport inv = compare_invariance(x, y, detail::identity_injection(x.states));
            if (!inv.pass) {
                std::string opdesc;
                for (const auto& o : ops)
                    opdesc += " " + o.describe();
                fail("invariance broken by" + opdesc + ":\n" + inv.str());
            }
            OracleReport oracle2 = oracle_check(y);
            if (!oracle2.pass)
                fail("flow oracle mismatch after subdivision (" +
                     std::to_string(oracle2.mismatches.size()) + " entries)");
        }
    } catch (const std::exception& e) {
        fail(std::string("exception: ") + e.what());
    }
    res.log = log.str();
    return res;
}

struct FuzzOptions {
    std::uint64_t seed = 0;
    int count = 100;
    int threads = 1;
    std::size_t max_cubes = 200;
    int max_ops = 5;
};

struct FuzzSummary {
    int instances = 0;
    int failures = 0;
    std::vector<std::string> failure_logs; // in instance order
};

/// Deterministic for a fixed seed regardless of thread count: instance seeds
/// are derived up front and results are aggregated in instance order.
inline FuzzSummary run_fuzz(const FuzzOptions& opt)
{
    FuzzSummary sum;
    sum.instances = opt.count;
    std::vector<FuzzInstanceResult> results(static_cast<std::size_t>(opt.count));
    const int threads = std::max(1, opt.threads);
    if (threads == 1) {
        for (int i = 0; i < opt.count; ++i)
            results[static_cast<std::size_t>(i)] = fuzz_instance(
                detail::splitmix64(opt.seed + static_cast<std::uint64_t>(i)), opt.max_cubes,
                opt.max_ops);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&]() {
                for (;;) {
                    const int i = next.fetch_add(1);
                    if (i >= opt.count)
                        return;
                    results[static_cast<std::size_t>(i)] = fuzz_instance(
                        detail::splitmix64(opt.seed + static_cast<std::uint64_t>(i)),
                        opt.max_cubes, opt.max_ops);
                }
            });
        for (auto& t : pool)
            t.join();
    }
    for (int i = 0; i < opt.count; ++i)
        if (!results[static_cast<std::size_t>(i)].ok) {
            ++sum.failures;
            sum.failure_logs.push_back("instance " + std::to_string(i) + ": " +
                                       results[static_cast<std::size_t>(i)].log);
        }
    return sum;
}

} // namespace digerm
