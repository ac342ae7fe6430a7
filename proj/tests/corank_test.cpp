#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <thread>
#include <vector>

#include "coranking/corank.hpp"
#include "coranking/oracle.hpp"

using coranking::Bound;
using coranking::CorankResult;
using coranking::CutVector;
using coranking::DupProfile;
using coranking::GenSpec;
using coranking::Instance;

namespace {

using I64 = std::int64_t;

Instance<I64> inst_of(std::vector<std::vector<I64>> lists) {
    return coranking::make_instance(std::move(lists));
}

CutVector cut_of(std::vector<I64> index) {
    CutVector cut{std::move(index), 0};
    cut.rank = coranking::cut_mass(cut);
    return cut;
}

// Re-applies the recorded transfers on top of the water-fill start and
// checks every per-round invariant the search promises: conserved mass,
// monotone bounds that always contain the index, positive moves, and the
// recorded width sums.
void check_replay(const Instance<I64>& inst, I64 rank, const CorankResult<I64>& result) {
    CutVector cut = coranking::water_fill_init(inst, rank);
    const std::size_t m = inst.lists.size();
    std::vector<I64> lower(m, 0), upper(m);
    for (std::size_t t = 0; t < m; ++t)
        upper[t] = static_cast<I64>(inst.lists[t].size());

    I64 round = 0;
    for (const auto& move : result.stats.transfers) {
        ++round;
        REQUIRE(move.round == round);
        REQUIRE(move.delta >= 1);
        REQUIRE(move.donor != move.receiver);
        const auto d = static_cast<std::size_t>(move.donor);
        const auto r = static_cast<std::size_t>(move.receiver);
        REQUIRE(cut.index[d] <= upper[d]); // tightening only narrows
        REQUIRE(cut.index[r] >= lower[r]);
        upper[d] = cut.index[d];
        lower[r] = cut.index[r];
        cut.index[d] -= move.delta;
        cut.index[r] += move.delta;
        REQUIRE(coranking::cut_mass(cut) == rank);
        I64 width_sum = 0;
        for (std::size_t t = 0; t < m; ++t) {
            REQUIRE(lower[t] <= cut.index[t]);
            REQUIRE(cut.index[t] <= upper[t]);
            width_sum += upper[t] - lower[t];
        }
        REQUIRE(width_sum == move.width_sum);
    }
    REQUIRE(round == result.stats.rounds);
    REQUIRE(cut.index == result.cut.index);
}

} // namespace

TEST_CASE("boundary access with sentinels") {
    const auto inst = inst_of({{2, 4}});
    CHECK(coranking::boundary_left(inst, 0, 0).tag == Bound::NegInf);
    CHECK(coranking::boundary_left(inst, 0, 2) ==
          coranking::BoundaryKey<I64>{Bound::Finite, 4, 0});
    CHECK(coranking::boundary_left(inst, 0, 1).value == 2);
    CHECK(coranking::boundary_right(inst, 0, 2).tag == Bound::PosInf);
    CHECK(coranking::boundary_right(inst, 0, 0).value == 2);
    CHECK_THROWS_AS(coranking::boundary_left(inst, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(coranking::boundary_right(inst, 0, -1), std::invalid_argument);

    const auto with_empty = inst_of({{}});
    CHECK(coranking::boundary_right(with_empty, 0, 0).tag == Bound::PosInf);
}

TEST_CASE("water fill places mass in ascending list order") {
    const auto inst = inst_of({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
    CHECK(coranking::water_fill_init(inst, 5).index == std::vector<I64>{3, 2, 0});
    CHECK(coranking::water_fill_init(inst, 0).index == std::vector<I64>{0, 0, 0});

    const auto pair = inst_of({{1, 1}, {1, 1}});
    CHECK(coranking::water_fill_init(pair, 4).index == std::vector<I64>{2, 2});
    CHECK_THROWS_AS(coranking::water_fill_init(pair, 5), std::invalid_argument);
    CHECK_THROWS_AS(coranking::water_fill_init(pair, -1), std::invalid_argument);
}

TEST_CASE("corank on a two-list instance") {
    const auto inst = inst_of({{1, 3, 5}, {2, 4, 6}});
    const auto result = coranking::corank(inst, 3);
    CHECK(result.cut.index == std::vector<I64>{2, 1});
    CHECK(coranking::is_valid_corank(inst, result.cut));
    // Frontier at this cut: left boundaries (3,2), right boundaries (5,4).
    CHECK(coranking::boundary_left(inst, 0, 2).value == 3);
    CHECK(coranking::boundary_right(inst, 1, 1).value == 4);
    CHECK(result.stats.heap_updates == 4 * result.stats.rounds);
}

TEST_CASE("corank extremes") {
    const auto inst = inst_of({{1, 3, 5}, {2, 4, 6}});
    CHECK(coranking::corank(inst, 0).cut.index == std::vector<I64>{0, 0});
    CHECK(coranking::corank(inst, 6).cut.index == std::vector<I64>{3, 3});
    CHECK(coranking::corank(inst, 0).stats.rounds == 0);
    CHECK(coranking::corank(inst, 6).stats.rounds == 0);

    const auto single = inst_of({{7, 8, 9, 9}});
    for (I64 k = 0; k <= 4; ++k)
        CHECK(coranking::corank(single, k).cut.index == std::vector<I64>{k});

    CHECK_THROWS_AS(coranking::corank(inst, 7), std::invalid_argument);
    CHECK_THROWS_AS(coranking::corank(inst, -1), std::invalid_argument);
    CHECK_THROWS_AS(coranking::make_instance(std::vector<std::vector<I64>>{}),
                    std::invalid_argument);
}

TEST_CASE("corank output on an all-ties instance is valid and canonicalizes") {
    const auto inst = inst_of({{2, 2}, {2, 2}});
    const auto result = coranking::corank(inst, 2);
    CHECK(coranking::is_valid_corank(inst, result.cut));
    CHECK(coranking::canonicalize_cut(inst, result.cut).index == std::vector<I64>{2, 0});
}

TEST_CASE("validity predicate") {
    const auto inst = inst_of({{1, 3, 5}, {2, 4, 6}});
    CHECK(coranking::is_valid_corank(inst, cut_of({2, 1})));
    CHECK_FALSE(coranking::is_valid_corank(inst, cut_of({3, 0}))); // left 5 > right 2
    CHECK(coranking::is_valid_corank(inst, cut_of({0, 0})));

    CutVector wrong_mass{{1, 1}, 3};
    CHECK_FALSE(coranking::is_valid_corank(inst, wrong_mass));
    CutVector bad_arity{{1}, 1};
    CHECK_THROWS_AS(coranking::is_valid_corank(inst, bad_arity), std::invalid_argument);
    CutVector out_of_range{{4, 0}, 4};
    CHECK_THROWS_AS(coranking::is_valid_corank(inst, out_of_range), std::invalid_argument);
}

TEST_CASE("canonicalize_cut resolves boundary ties toward lower lists") {
    CHECK(coranking::canonicalize_cut(inst_of({{2, 2}, {2, 2}}), cut_of({0, 2})).index ==
          std::vector<I64>{2, 0});
    CHECK(coranking::canonicalize_cut(inst_of({{1, 3, 5}, {2, 4, 6}}), cut_of({2, 1})).index ==
          std::vector<I64>{2, 1});
    CHECK(coranking::canonicalize_cut(inst_of({{2}, {2}, {2}}), cut_of({0, 1, 1})).index ==
          std::vector<I64>{1, 1, 0});
    CHECK_THROWS_AS(coranking::canonicalize_cut(inst_of({{1, 3, 5}, {2, 4, 6}}), cut_of({3, 0})),
                    std::invalid_argument);
}

TEST_CASE("corank_canonical matches the exhaustive oracle on fixed cases") {
    CHECK(coranking::corank_canonical(inst_of({{2, 2}, {2, 2}}), 2).index ==
          std::vector<I64>{2, 0});
    CHECK(coranking::corank_canonical(inst_of({{1, 3, 5}, {2, 4, 6}}), 3).index ==
          std::vector<I64>{2, 1});
    CHECK(coranking::corank_canonical(inst_of({{1, 3, 5}, {2, 4, 6}}), 6).index ==
          std::vector<I64>{3, 3});
}

TEST_CASE("corank is deterministic") {
    const auto inst = coranking::gen_instance({4, 4, 0, 50, DupProfile::Heavy, 0, 99});
    const auto a = coranking::corank(inst, inst.total / 2, true);
    const auto b = coranking::corank(inst, inst.total / 2, true);
    CHECK(a.cut == b.cut);
    CHECK(a.stats.rounds == b.stats.rounds);
}

TEST_CASE("randomized instances: validity, oracle agreement, replay invariants") {
    std::mt19937_64 rng(7041);
    const DupProfile profiles[] = {DupProfile::None, DupProfile::Heavy, DupProfile::Runs};
    for (int trial = 0; trial < 3000; ++trial) {
        GenSpec spec;
        spec.m_min = 1;
        spec.m_max = 1 + static_cast<int>(rng() % 24);
        spec.n_min = 0;
        spec.n_max = static_cast<I64>(rng() % 200);
        spec.dups = profiles[trial % 3];
        spec.seed = rng();
        const auto inst = coranking::gen_instance(spec);
        const auto triples = coranking::sorted_triples(inst);

        std::vector<I64> ranks = {0, inst.total};
        for (int extra = 0; extra < 3 && inst.total > 0; ++extra)
            ranks.push_back(static_cast<I64>(rng() % static_cast<std::uint64_t>(inst.total + 1)));
        for (const I64 k : ranks) {
            const auto result = coranking::corank(inst, k, true);
            REQUIRE(coranking::is_valid_corank(inst, result.cut));
            REQUIRE(result.stats.heap_updates == 4 * result.stats.rounds);
            check_replay(inst, k, result);
            const auto canonical = coranking::canonicalize_cut(inst, result.cut);
            REQUIRE(canonical.index ==
                    coranking::count_prefix(triples, inst.lists.size(), k).index);
        }
    }
}

TEST_CASE("corank is safe to run concurrently on a shared instance") {
    const auto inst = coranking::gen_instance({16, 16, 100, 100, DupProfile::Runs, 0, 31337});
    std::vector<CutVector> results(8);
    {
        std::vector<std::thread> workers;
        for (std::size_t w = 0; w < results.size(); ++w)
            workers.emplace_back([&, w] {
                results[w] = coranking::corank_canonical(inst, inst.total / 3);
            });
        for (auto& worker : workers) worker.join();
    }
    for (const auto& cut : results)
        CHECK(cut == results[0]);
}

TEST_CASE("canonical cuts are nested across ranks") {
    std::mt19937_64 rng(5180);
    for (int trial = 0; trial < 300; ++trial) {
        GenSpec spec;
        spec.m_min = 1;
        spec.m_max = 12;
        spec.n_min = 0;
        spec.n_max = 100;
        spec.dups = trial % 2 ? DupProfile::Heavy : DupProfile::Runs;
        spec.seed = rng();
        const auto inst = coranking::gen_instance(spec);
        if (inst.total == 0) continue;
        I64 k1 = static_cast<I64>(rng() % static_cast<std::uint64_t>(inst.total + 1));
        I64 k2 = static_cast<I64>(rng() % static_cast<std::uint64_t>(inst.total + 1));
        if (k2 < k1) std::swap(k1, k2);
        const auto lo = coranking::corank_canonical(inst, k1);
        const auto hi = coranking::corank_canonical(inst, k2);
        for (std::size_t t = 0; t < inst.lists.size(); ++t)
            REQUIRE(lo.index[t] <= hi.index[t]);
    }
}
