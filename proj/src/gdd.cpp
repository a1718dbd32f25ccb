#include "qgdd/gdd.hpp"

#include <algorithm>
#include <string>

#include "qgdd/error.hpp"
#include "qgdd/parallel.hpp"
#include "qgdd/params.hpp"

namespace qgdd {

BlockLines::BlockLines(unsigned q, unsigned k) : q_(q), k_(k) {
  if (k < 2) return;
  for (const auto& c : enumerate_k_subspaces(q, k, 2)) pairs_.emplace_back(c.rows()[0], c.rows()[1]);
}

Word BlockLines::combine_rows(std::span<const Word> rows, Word coeffs, unsigned v) const noexcept {
  Word x = 0;
  if (q_ == 2) {
    for (unsigned i = 0; coeffs != 0; ++i, coeffs >>= 1)
      if (coeffs & 1) x ^= rows[i];
    return x;
  }
  for (unsigned i = 0; i < k_ && coeffs != 0; ++i, coeffs /= q_)
    if (const unsigned c = static_cast<unsigned>(coeffs % q_)) x = vec::axpy(x, rows[i], c, q_, v);
  return x;
}

std::vector<std::uint32_t> line_coverage(const GrassmannIndex& lines, const std::vector<Subspace>& blocks) {
  const std::uint64_t n = lines.size();
  std::vector<std::uint32_t> total(n, 0);
  if (blocks.empty()) return total;
  const unsigned k = blocks.front().dim();
  const BlockLines block_lines(lines.q(), k);
  // Private counters per worker, but only when the copies stay small.
  unsigned workers = worker_count();
  if (n > (std::uint64_t{1} << 24) || blocks.size() < 4096) workers = 1;
  std::vector<std::vector<std::uint32_t>> partial(workers > 1 ? workers - 1 : 0,
                                                  std::vector<std::uint32_t>(n, 0));
  parallel_chunks(
      blocks.size(),
      [&](unsigned w, std::uint64_t b, std::uint64_t e) {
        auto& counts = w == 0 ? total : partial[w - 1];
        for (std::uint64_t i = b; i < e; ++i)
          block_lines.for_each(blocks[i], [&](const Subspace& line) { ++counts[lines.rank(line)]; });
      },
      workers);
  for (const auto& p : partial)
    for (std::uint64_t i = 0; i < n; ++i) total[i] += p[i];
  return total;
}

namespace {

std::vector<bool> spread_line_mask(const GrassmannIndex& lines, const Spread& spread) {
  std::vector<bool> covered(lines.size(), false);
  const BlockLines element_lines(spread.q(), spread.element_dim());
  for (const auto& e : spread.elements())
    element_lines.for_each(e, [&](const Subspace& line) { covered[lines.rank(line)] = true; });
  return covered;
}

std::map<std::uint64_t, std::uint64_t> uncovered_histogram(const std::vector<std::uint32_t>& counts,
                                                           const std::vector<bool>& covered) {
  std::map<std::uint64_t, std::uint64_t> h;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (!covered[i]) ++h[counts[i]];
  return h;
}

std::optional<std::uint64_t> constant_value(const std::map<std::uint64_t, std::uint64_t>& h) {
  if (h.size() != 1) return std::nullopt;
  return h.begin()->first;
}

void check_spread(const GddInstance& inst) {
  const auto& p = inst.params;
  if (!inst.spread) throw Error(Errc::InvalidArgument, "instance has no spread");
  const Spread& s = *inst.spread;
  if (s.q() != p.q || s.ambient() != p.v || s.element_dim() != p.g)
    throw Error(Errc::AmbientMismatch, "spread does not match the instance parameters");
  if (s.size() < 2) throw Error(Errc::InvalidArgument, "a GDD needs more than one group");
}

}  // namespace

VerificationReport verify(const GddInstance& inst) {
  check_spread(inst);
  const auto& p = inst.params;
  const Spread& spread = *inst.spread;
  for (std::size_t i = 0; i < inst.blocks.size(); ++i) {
    const auto& b = inst.blocks[i];
    if (b.q() != p.q || b.ambient() != p.v || b.dim() != p.k)
      throw Error(Errc::BlockDimensionMismatch, "block " + std::to_string(i) + " has dimension " +
                                                    std::to_string(b.dim()) + ", expected " +
                                                    std::to_string(p.k));
  }
  {
    std::vector<const Subspace*> sorted;
    sorted.reserve(inst.blocks.size());
    for (const auto& b : inst.blocks) sorted.push_back(&b);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return *a < *b; });
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return *a == *b; });
    if (dup != sorted.end()) throw Error(Errc::DuplicateBlocks, "repeated block");
  }
  for (std::size_t i = 0; i < inst.blocks.size(); ++i)
    if (!is_scattered(inst.blocks[i], spread))
      throw Error(Errc::BlockMeetsGroupBadly,
                  "block " + std::to_string(i) + " contains a line of a spread element");

  VerificationReport r;
  r.block_count = inst.blocks.size();
  const GrassmannIndex lines(p.q, p.v, 2);
  const auto counts = line_coverage(lines, inst.blocks);
  const auto covered = spread_line_mask(lines, spread);
  for (auto c : counts) r.total_coverage += c;
  r.line_histogram = uncovered_histogram(counts, covered);
  r.lambda_observed = constant_value(r.line_histogram);
  r.is_gdd = r.lambda_observed.has_value();

  if (!r.is_gdd) {
    std::uint64_t mode = 0, best = 0;
    for (const auto& [c, n] : r.line_histogram)
      if (n > best) {
        best = n;
        mode = c;
      }
    for (std::uint64_t i = 0; i < counts.size() && r.offending_lines.size() < VerificationReport::kMaxWitnesses; ++i)
      if (!covered[i] && counts[i] != mode) r.offending_lines.push_back(lines.unrank(i));
  }

  // Blocks through each point.
  std::map<Word, std::uint64_t> through;
  for (const auto& b : inst.blocks)
    for_each_point(b, [&](Word x) { ++through[vec::normalize(x, p.q, p.v)]; });
  const std::uint64_t all_points = point_count(p.q, p.v);
  if (through.size() < all_points) r.replication_histogram[0] = all_points - through.size();
  for (const auto& [pt, n] : through) ++r.replication_histogram[n];

  if (r.lambda_observed) {
    const BigInt lambda = *r.lambda_observed;
    r.expected_block_count = required_block_count(p.q, p.v, p.g, p.k, lambda);
    r.expected_replication = required_replication(p.q, p.v, p.g, p.k, lambda);
    r.block_count_ok = r.expected_block_count && *r.expected_block_count == r.block_count;
    r.replication_ok = r.expected_replication && r.replication_histogram.size() == 1 &&
                       *r.expected_replication == r.replication_histogram.begin()->first;
  }
  return r;
}

BigInt lambda_max_k3(unsigned v, unsigned g, unsigned q) {
  if (v < 2 || g < 1) throw Error(Errc::InvalidArgument, "lambda_max_k3 needs v >= 2, g >= 1");
  return gaussian_binomial(v - 2, 1, q) - gaussian_binomial(2, 1, q) * gaussian_binomial(g - 1, 1, q);
}

BigInt lambda_max_g2k4(unsigned v, unsigned q) {
  if (v < 4) throw Error(Errc::InvalidArgument, "lambda_max_g2k4 needs v >= 4");
  const auto gb = [q](unsigned n, int m) { return gaussian_binomial(n, m, q); };
  return gb(v - 2, 2) - 1 - BigInt(q) * gb(2, 1) * gb(v - 4, 1) - gb(v, 1) / gb(2, 1) + gb(4, 1) / gb(2, 1);
}

namespace {

void check_guard(const Spread& spread, unsigned k, std::uint64_t guard) {
  if (k > spread.ambient()) throw Error(Errc::InvalidArgument, "k exceeds ambient dimension");
  const BigInt n = gaussian_binomial(spread.ambient(), static_cast<int>(k), spread.q());
  if (n > guard)
    throw Error(Errc::TooLarge, to_string(n) + " subspaces exceed the enumeration guard " +
                                    std::to_string(guard));
}

}  // namespace

std::vector<Subspace> scattered_subspaces(const Spread& spread, unsigned k, std::uint64_t guard) {
  check_guard(spread, k, guard);
  const GrassmannIndex index(spread.q(), spread.ambient(), k);
  const unsigned workers = worker_count();
  std::vector<std::vector<Subspace>> parts(workers);
  parallel_chunks(
      index.size(),
      [&](unsigned w, std::uint64_t b, std::uint64_t e) {
        GrassmannIter it(index, ScatteredWrt{&spread}, b, e);
        while (auto u = it.next()) parts[w].push_back(std::move(*u));
      },
      workers);
  std::vector<Subspace> out;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
  return out;
}

std::optional<std::uint64_t> lambda_max_bruteforce(const Spread& spread, unsigned k, std::uint64_t guard) {
  check_guard(spread, k, guard);
  const unsigned q = spread.q(), v = spread.ambient();
  const GrassmannIndex index(q, v, k);
  const GrassmannIndex lines(q, v, 2);
  const BlockLines block_lines(q, k);
  unsigned workers = worker_count();
  if (lines.size() > (std::uint64_t{1} << 24)) workers = 1;
  std::vector<std::vector<std::uint32_t>> counts(workers, std::vector<std::uint32_t>(lines.size(), 0));
  parallel_chunks(
      index.size(),
      [&](unsigned w, std::uint64_t b, std::uint64_t e) {
        GrassmannIter it(index, ScatteredWrt{&spread}, b, e);
        auto& c = counts[w];
        while (auto u = it.next())
          block_lines.for_each(*u, [&](const Subspace& line) { ++c[lines.rank(line)]; });
      },
      workers);
  for (std::size_t w = 1; w < counts.size(); ++w)
    for (std::size_t i = 0; i < counts[0].size(); ++i) counts[0][i] += counts[w][i];
  return constant_value(uncovered_histogram(counts[0], spread_line_mask(lines, spread)));
}

GddInstance complete_gdd(std::shared_ptr<const Spread> spread, unsigned k, std::uint64_t guard) {
  if (!spread) throw Error(Errc::InvalidArgument, "no spread");
  auto blocks = scattered_subspaces(*spread, k, guard);
  const GrassmannIndex lines(spread->q(), spread->ambient(), 2);
  const auto lambda =
      constant_value(uncovered_histogram(line_coverage(lines, blocks), spread_line_mask(lines, *spread)));
  if (!lambda) throw Error(Errc::NoLambdaMax, "scattered subspaces do not cover lines uniformly");
  std::sort(blocks.begin(), blocks.end());
  GddInstance out;
  out.params = {spread->q(), spread->ambient(), spread->element_dim(), k, *lambda};
  out.spread = std::move(spread);
  out.blocks = std::move(blocks);
  return out;
}

GddInstance supplementary(const GddInstance& inst, std::uint64_t guard) {
  check_spread(inst);
  GddInstance all = complete_gdd(inst.spread, inst.params.k, guard);
  if (inst.params.lambda > all.params.lambda)
    throw Error(Errc::InvalidArgument, "instance lambda exceeds lambda_max");
  auto mine = inst.blocks;
  std::sort(mine.begin(), mine.end());
  GddInstance out;
  out.params = inst.params;
  out.params.lambda = all.params.lambda - inst.params.lambda;
  out.spread = inst.spread;
  std::set_difference(all.blocks.begin(), all.blocks.end(), mine.begin(), mine.end(),
                      std::back_inserter(out.blocks));
  return out;
}

void PointMultiset::add(const Subspace& u, std::uint64_t times) {
  if (weights.empty() && v == 0) {
    q = u.q();
    v = u.ambient();
  }
  if (u.q() != q || u.ambient() != v) throw Error(Errc::AmbientMismatch, "point multiset ambient mismatch");
  for_each_point(u, [&](Word x) { weights[vec::normalize(x, q, v)] += times; });
}

std::uint64_t PointMultiset::size() const noexcept {
  std::uint64_t n = 0;
  for (const auto& [pt, w] : weights) n += w;
  return n;
}

PointMultiset PointMultiset::complement(std::uint64_t lambda) const {
  PointMultiset out{q, v, {}};
  std::vector<Word> units(v);
  for (unsigned i = 0; i < v; ++i) units[i] = vec::pow_q(q, i);
  for_each_point(Subspace::span(q, v, units), [&](Word x) {
    const auto it = weights.find(x);
    const std::uint64_t w = it == weights.end() ? 0 : it->second;
    if (w > lambda) throw Error(Errc::InvalidArgument, "complement lambda below a point weight");
    if (lambda > w) out.weights[x] = lambda - w;
  });
  return out;
}

unsigned qr_divisibility(const PointMultiset& points) {
  const unsigned q = points.q, v = points.v;
  if (v == 0) return 0;
  const std::uint64_t total = points.size();
  unsigned best = v - 1;
  bool any = false;
  std::vector<Word> units(v);
  for (unsigned i = 0; i < v; ++i) units[i] = vec::pow_q(q, i);
  for_each_point(Subspace::span(q, v, units), [&](Word h) {
    std::uint64_t in = 0;
    for (const auto& [x, w] : points.weights)
      if (vec::dot(x, h, q, v) == 0) in += w;
    std::uint64_t diff = total - in;
    if (diff == 0) return;
    unsigned r = 0;
    while (diff % q == 0) {
      diff /= q;
      ++r;
    }
    best = any ? std::min(best, r) : r;
    any = true;
  });
  return best;
}

}  // namespace qgdd
