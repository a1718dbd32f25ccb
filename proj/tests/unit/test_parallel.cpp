#include <cstdlib>
#include <mutex>

#include "doctest.h"
#include "qgdd/construct.hpp"
#include "qgdd/gdd.hpp"
#include "qgdd/parallel.hpp"
#include "qgdd/spread.hpp"

using namespace qgdd;

namespace {

struct ThreadsEnv {
  explicit ThreadsEnv(const char* n) { setenv("QGDD_THREADS", n, 1); }
  ~ThreadsEnv() { unsetenv("QGDD_THREADS"); }
};

}  // namespace

TEST_CASE("worker count honours QGDD_THREADS") {
  {
    ThreadsEnv env("3");
    CHECK(worker_count() == 3);
  }
  {
    ThreadsEnv env("zero");
    CHECK(worker_count() >= 1);
  }
}

TEST_CASE("chunks cover the range exactly once") {
  for (unsigned workers : {1u, 2u, 5u, 64u}) {
    std::vector<int> hits(1000, 0);
    std::mutex m;
    parallel_chunks(
        1000,
        [&](unsigned, std::uint64_t b, std::uint64_t e) {
          std::lock_guard<std::mutex> lock(m);
          for (auto i = b; i < e; ++i) ++hits[i];
        },
        workers);
    for (int h : hits) CHECK(h == 1);
  }
  parallel_chunks(0, [](unsigned, std::uint64_t, std::uint64_t) {}, 4);
}

TEST_CASE("results do not depend on the worker count") {
  const auto spread = desarguesian_spread(2, 2, 4);
  std::vector<Subspace> one, many;
  std::optional<std::uint64_t> lambda_one, lambda_many;
  GddInstance built_one, built_many;
  {
    ThreadsEnv env("1");
    one = scattered_subspaces(spread, 3);
    lambda_one = lambda_max_bruteforce(spread, 3);
    built_one = build_fat_orbit_gdd(2, 2, 4, 3);
  }
  {
    ThreadsEnv env("3");
    many = scattered_subspaces(spread, 3);
    lambda_many = lambda_max_bruteforce(spread, 3);
    built_many = build_fat_orbit_gdd(2, 2, 4, 3);
  }
  CHECK(one == many);
  CHECK(lambda_one == 60);
  CHECK(lambda_one == lambda_many);
  CHECK(built_one.blocks == built_many.blocks);
  CHECK(verify(built_many).lambda_observed == 60);
}
