#include "qgdd/km_search.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "qgdd/error.hpp"
#include "qgdd/grassmann.hpp"
#include "qgdd/params.hpp"

namespace qgdd {

Matrix singer_generator(const Field& ext) {
  std::vector<Word> rows(ext.degree());
  for (unsigned i = 0; i < ext.degree(); ++i) rows[i] = ext.exp(i + 1);
  return Matrix(ext.q(), ext.degree(), std::move(rows));
}

Matrix frobenius_generator(const Field& ext) {
  std::vector<Word> rows(ext.degree());
  for (unsigned i = 0; i < ext.degree(); ++i) rows[i] = ext.exp(std::uint64_t{i} * ext.q());
  return Matrix(ext.q(), ext.degree(), std::move(rows));
}

MatrixGroup::MatrixGroup(unsigned q, unsigned v, std::vector<Matrix> generators)
    : q_(q), v_(v), generators_(std::move(generators)) {
  for (const auto& m : generators_) {
    if (m.q() != q || m.cols() != v || m.rows_count() != v)
      throw Error(Errc::DimensionMismatch, "generator has the wrong shape");
    if (!m.inverse()) throw Error(Errc::InvalidArgument, "generator is singular");
  }
}

MatrixGroup MatrixGroup::trivial(unsigned q, unsigned v) { return MatrixGroup(q, v, {}); }

const std::vector<Matrix>& MatrixGroup::elements() const {
  if (elements_) return *elements_;
  const Matrix id = Matrix::identity(q_, v_);
  std::unordered_set<Matrix, MatrixHash> seen{id};
  std::deque<Matrix> todo{id};
  while (!todo.empty()) {
    const Matrix m = std::move(todo.front());
    todo.pop_front();
    for (const auto& gen : generators_) {
      Matrix p = m * gen;
      if (seen.insert(p).second) {
        if (seen.size() > kMaxElements) throw Error(Errc::TooLarge, "group too large to materialise");
        todo.push_back(std::move(p));
      }
    }
  }
  std::vector<Matrix> all(seen.begin(), seen.end());
  std::sort(all.begin(), all.end());
  elements_ = std::move(all);
  return *elements_;
}

bool MatrixGroup::stabilizes(const Spread& spread) const {
  if (spread.q() != q_ || spread.ambient() != v_) return false;
  for (const auto& gen : generators_)
    for (const auto& e : spread.elements()) {
      const Subspace image = apply(gen, e);
      if (spread[spread.lookup(image.rows()[0])] != image) return false;
    }
  return true;
}

MatrixGroup parse_group(const Field& ext, const std::string& spec) {
  std::vector<Matrix> gens;
  if (spec.find_first_not_of(" \t") == std::string::npos)
    throw Error(Errc::InvalidArgument, "empty group specification");
  std::stringstream in(spec);
  std::string token;
  while (std::getline(in, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }),
                token.end());
    if (token == "1" || token == "id" || token == "trivial") continue;
    const auto caret = token.find('^');
    const std::string name = token.substr(0, caret);
    if (name.empty()) throw Error(Errc::InvalidArgument, "empty group generator in \"" + spec + "\"");
    std::uint64_t power = 1;
    if (caret != std::string::npos) {
      const std::string digits = token.substr(caret + 1);
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
        throw Error(Errc::InvalidArgument, "bad exponent in group generator: " + token);
      if (digits.size() > 18) throw Error(Errc::InvalidArgument, "exponent too large: " + token);
      power = std::stoull(digits);
    }
    if (name == "sigma") gens.push_back(singer_generator(ext).pow(power));
    else if (name == "phi") gens.push_back(frobenius_generator(ext).pow(power));
    else throw Error(Errc::InvalidArgument, "unknown group generator: " + token);
  }
  return MatrixGroup(ext.q(), ext.degree(), std::move(gens));
}

Spread singer_spread(const Field& ext, unsigned g) {
  const unsigned v = ext.degree(), q = ext.q();
  if (g == 0 || v % g != 0) throw Error(Errc::InvalidArgument, "g must divide v");
  const std::uint64_t step = (ext.order() - 1) / (vec::pow_q(q, g) - 1);
  std::vector<Word> rows(g);
  for (unsigned i = 0; i < g; ++i) rows[i] = ext.exp(step * i);
  const Subspace seed = Subspace::span(q, v, rows);
  const auto size = to_u64(*group_count(q, v, g));
  return spread_from_orbit(seed, singer_generator(ext), size);
}

Orbit orbit_of(const MatrixGroup& group, const Subspace& u) {
  std::set<Subspace> seen{u};
  std::vector<const Subspace*> todo{&*seen.begin()};
  while (!todo.empty()) {
    const Subspace* cur = todo.back();
    todo.pop_back();
    for (const auto& gen : group.generators()) {
      auto [it, fresh] = seen.insert(apply(gen, *cur));
      if (fresh) todo.push_back(&*it);
    }
  }
  Orbit o;
  o.members.assign(seen.begin(), seen.end());
  o.representative = o.members.front();
  return o;
}

std::vector<Orbit> orbits(const MatrixGroup& group, const std::vector<Subspace>& objects, const Spread* spread) {
  if (spread && !group.stabilizes(*spread))
    throw Error(Errc::GroupDoesNotStabilizeSpread, "group does not map the spread onto itself");
  std::unordered_set<Subspace, SubspaceHash> done;
  std::vector<Orbit> out;
  for (const auto& u : objects) {
    if (done.contains(u)) continue;
    Orbit o = orbit_of(group, u);
    for (const auto& m : o.members) done.insert(m);
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end(),
            [](const Orbit& a, const Orbit& b) { return a.representative < b.representative; });
  return out;
}

KmSystem build_km_system(const MatrixGroup& group, const Spread& spread, unsigned k, std::uint64_t guard) {
  if (!group.stabilizes(spread))
    throw Error(Errc::GroupDoesNotStabilizeSpread, "group does not map the spread onto itself");
  const unsigned q = spread.q(), v = spread.ambient();
  KmSystem sys;
  sys.params = {q, v, spread.element_dim(), k, 0};
  sys.block_orbits = orbits(group, scattered_subspaces(spread, k, guard));

  const GrassmannIndex lines(q, v, 2);
  std::vector<Subspace> uncovered;
  GrassmannIter it(q, v, 2);
  while (auto line = it.next())
    if (!spread.covers_line(*line)) uncovered.push_back(std::move(*line));
  sys.line_orbits = orbits(group, uncovered);

  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> rep_row(lines.size(), kNone);
  for (std::uint32_t i = 0; i < sys.line_orbits.size(); ++i)
    rep_row[lines.rank(sys.line_orbits[i].representative)] = i;

  sys.matrix.assign(sys.rows(), std::vector<std::uint32_t>(sys.cols(), 0));
  const BlockLines block_lines(q, k);
  for (std::uint32_t j = 0; j < sys.cols(); ++j)
    for (const auto& b : sys.block_orbits[j].members)
      block_lines.for_each(b, [&](const Subspace& line) {
        if (const auto i = rep_row[lines.rank(line)]; i != kNone) ++sys.matrix[i][j];
      });
  return sys;
}

namespace {

class CoverSearch {
 public:
  CoverSearch(const KmSystem& sys, std::uint64_t lambda, bool complemented) : complemented_(complemented) {
    const std::size_t rows = sys.rows(), cols = sys.cols();
    col_nz_.resize(cols);
    row_nz_.resize(rows);
    for (std::uint32_t i = 0; i < rows; ++i)
      for (std::uint32_t j = 0; j < cols; ++j)
        if (const auto a = sys.matrix[i][j]) {
          col_nz_[j].emplace_back(i, a);
          row_nz_[i].emplace_back(j, a);
        }
    residual_.assign(rows, static_cast<std::int64_t>(lambda));
    decided_.assign(cols, kOpen);
  }

  SolveResult run(const SolveOptions& opt) {
    SolveResult res;
    bool backtrack = false;
    if (opt.resume) {
      for (const auto& f : opt.resume->path) {
        if (f.first >= decided_.size()) throw Error(Errc::InvalidArgument, "resume state does not fit");
        path_.push_back(f);
        apply(f);
      }
      backtrack = opt.resume->backtrack_first;
    }
    while (true) {
      if (backtrack) {
        backtrack = false;
        if (!step_back()) {
          res.exhausted = true;
          return res;
        }
      }
      if (res.nodes >= opt.node_budget) {
        res.state = SearchState{path_, false, complemented_};
        return res;
      }
      ++res.nodes;
      const auto branch = choose();
      if (branch == kSolved) {
        res.selections.push_back(selection());
        if (res.selections.size() >= opt.limit) {
          res.state = SearchState{path_, true, complemented_};
          return res;
        }
        backtrack = true;
      } else if (branch == kDead) {
        backtrack = true;
      } else {
        path_.emplace_back(branch, 0);
        apply(path_.back());
      }
    }
  }

 private:
  static constexpr std::uint8_t kOpen = 0, kTaken = 1, kSkipped = 2;
  static constexpr std::uint32_t kSolved = UINT32_MAX, kDead = UINT32_MAX - 1;

  void apply(const std::pair<std::uint32_t, std::uint8_t>& f) {
    if (f.second == 0) {
      decided_[f.first] = kTaken;
      for (const auto& [i, a] : col_nz_[f.first]) residual_[i] -= a;
    } else {
      decided_[f.first] = kSkipped;
    }
  }

  void undo(const std::pair<std::uint32_t, std::uint8_t>& f) {
    if (f.second == 0)
      for (const auto& [i, a] : col_nz_[f.first]) residual_[i] += a;
    decided_[f.first] = kOpen;
  }

  bool step_back() {
    while (!path_.empty()) {
      auto& top = path_.back();
      undo(top);
      if (top.second == 0) {
        top.second = 1;
        apply(top);
        return true;
      }
      path_.pop_back();
    }
    return false;
  }

  bool admissible(std::uint32_t j) const {
    if (decided_[j] != kOpen) return false;
    for (const auto& [i, a] : col_nz_[j])
      if (static_cast<std::int64_t>(a) > residual_[i]) return false;
    return true;
  }

  // C(count, need) saturated at UINT64_MAX; ranks rows by branching freedom.
  static std::uint64_t completions(std::uint64_t count, std::uint64_t need) {
    if (need > count) return 0;
    need = std::min(need, count - need);
    unsigned __int128 c = 1;
    for (std::uint64_t i = 0; i < need; ++i) {
      c = c * (count - i) / (i + 1);
      if (c > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(c);
  }

  // Next column to branch on, or kSolved / kDead.
  std::uint32_t choose() const {
    std::vector<char> ok(decided_.size());
    for (std::uint32_t j = 0; j < ok.size(); ++j) ok[j] = admissible(j);
    std::size_t best_row = SIZE_MAX;
    std::uint64_t best_ways = UINT64_MAX;
    for (std::size_t i = 0; i < residual_.size(); ++i) {
      if (residual_[i] < 0) return kDead;
      if (residual_[i] == 0) continue;
      std::uint64_t count = 0;
      std::int64_t capacity = 0;
      for (const auto& [j, a] : row_nz_[i])
        if (ok[j]) {
          ++count;
          capacity += a;
        }
      if (capacity < residual_[i]) return kDead;
      const std::uint64_t ways = completions(count, static_cast<std::uint64_t>(residual_[i]));
      if (ways < best_ways || best_row == SIZE_MAX) {
        best_ways = ways;
        best_row = i;
      }
    }
    if (best_row == SIZE_MAX) {
      // Columns meeting no row are free either way.
      for (std::uint32_t j = 0; j < decided_.size(); ++j)
        if (decided_[j] == kOpen && col_nz_[j].empty()) return j;
      return kSolved;
    }
    for (const auto& [j, a] : row_nz_[best_row])
      if (ok[j]) return j;
    return kDead;
  }

  std::vector<std::uint32_t> selection() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t j = 0; j < decided_.size(); ++j)
      if ((decided_[j] == kTaken) != complemented_) out.push_back(j);
    return out;
  }

  bool complemented_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> col_nz_, row_nz_;
  std::vector<std::int64_t> residual_;
  std::vector<std::uint8_t> decided_;
  std::vector<std::pair<std::uint32_t, std::uint8_t>> path_;
};

}  // namespace

namespace {

SolveResult solve_exact(const KmSystem& system, std::uint64_t lambda, const SolveOptions& options) {
  // With constant row sums R, selections for lambda are complements of those for R - lambda.
  std::optional<std::uint64_t> row_sum;
  bool constant = system.rows() > 0;
  for (const auto& row : system.matrix) {
    const std::uint64_t s = std::accumulate(row.begin(), row.end(), std::uint64_t{0});
    if (row_sum && *row_sum != s) constant = false;
    row_sum = s;
  }
  bool complemented = constant && 2 * lambda > *row_sum;
  if (options.resume) complemented = options.resume->complemented;
  std::uint64_t target = lambda;
  if (complemented) {
    if (!constant || lambda > *row_sum) return SolveResult{{}, true, 0, std::nullopt};
    target = *row_sum - lambda;
  }
  if (target == 0) {
    // Only the empty (or, complemented, the full) selection.
    SolveResult res;
    res.nodes = 1;
    if (options.resume && options.resume->backtrack_first) {
      res.exhausted = true;
      return res;
    }
    std::vector<std::uint32_t> sel;
    if (complemented) {
      sel.resize(system.cols());
      std::iota(sel.begin(), sel.end(), 0u);
    }
    res.selections.push_back(std::move(sel));
    res.exhausted = options.limit > 1;
    if (!res.exhausted) res.state = SearchState{{}, true, complemented};
    return res;
  }
  CoverSearch search(system, target, complemented);
  return search.run(options);
}

// Tabu search on sum_i |(Ax)_i - lambda|, flipping one column per move.
std::optional<std::vector<std::uint32_t>> tabu_search(const KmSystem& system, std::uint64_t lambda,
                                                      std::uint64_t seed, std::uint64_t moves,
                                                      std::uint64_t& used) {
  const std::size_t rows = system.rows(), cols = system.cols();
  if (cols == 0) return std::nullopt;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> col_nz(cols);
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j)
      if (const auto a = system.matrix[i][j]) col_nz[j].emplace_back(i, a);
  const auto target = static_cast<std::int64_t>(lambda);
  std::vector<std::int64_t> cover(rows, 0);
  std::vector<char> x(cols, 0);
  std::vector<std::uint64_t> tabu_until(cols, 0);
  std::int64_t cost = target * static_cast<std::int64_t>(rows);
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> ties;
  for (std::uint64_t move = 1; cost > 0 && move <= moves; ++move) {
    ++used;
    std::int64_t best = INT64_MAX;
    ties.clear();
    for (std::uint32_t j = 0; j < cols; ++j) {
      const std::int64_t sign = x[j] ? -1 : 1;
      std::int64_t delta = 0;
      for (const auto& [i, a] : col_nz[j])
        delta += std::abs(cover[i] + sign * a - target) - std::abs(cover[i] - target);
      if (tabu_until[j] > move && cost + delta != 0) continue;
      if (delta < best) {
        best = delta;
        ties.clear();
      }
      if (delta == best) ties.push_back(j);
    }
    if (ties.empty()) continue;
    const std::uint32_t j = ties[rng() % ties.size()];
    const std::int64_t sign = x[j] ? -1 : 1;
    x[j] ^= 1;
    for (const auto& [i, a] : col_nz[j]) cover[i] += sign * a;
    cost += best;
    tabu_until[j] = move + 5 + rng() % 10;
  }
  if (cost != 0) return std::nullopt;
  std::vector<std::uint32_t> sel;
  for (std::uint32_t j = 0; j < cols; ++j)
    if (x[j]) sel.push_back(j);
  return sel;
}

bool is_cover(const KmSystem& system, std::uint64_t lambda, const std::vector<std::uint32_t>& sel) {
  for (const auto& row : system.matrix) {
    std::uint64_t c = 0;
    for (auto j : sel) c += row[j];
    if (c != lambda) return false;
  }
  return true;
}

}  // namespace

SolveResult solve_lambda_cover(const KmSystem& system, std::uint64_t lambda, const SolveOptions& options) {
  if (lambda == 0) throw Error(Errc::InvalidArgument, "lambda must be positive");
  SolveResult res;
  const bool local = options.method == SolveMethod::LocalSearch ||
                     (options.method == SolveMethod::Auto && options.limit == 1);
  if (options.method != SolveMethod::LocalSearch) {
    SolveOptions slice = options;
    if (local) slice.node_budget = std::min(options.node_budget, options.exact_slice);
    res = solve_exact(system, lambda, slice);
    if (!local || !res.selections.empty() || res.exhausted) return res;
  }
  std::uint64_t used = 0;
  const auto sel = tabu_search(system, lambda, options.seed, options.node_budget - res.nodes, used);
  res.nodes += used;
  if (sel) {
    if (!is_cover(system, lambda, *sel)) throw Error(Errc::InvalidArgument, "local search produced a non-cover");
    res.selections.push_back(*sel);
    res.local_search = true;
    return res;
  }
  if (options.method == SolveMethod::LocalSearch || !res.state || res.nodes >= options.node_budget) return res;
  SolveOptions rest = options;
  rest.resume = res.state;
  rest.node_budget = options.node_budget - res.nodes;
  const std::uint64_t spent = res.nodes;
  res = solve_exact(system, lambda, rest);
  res.nodes += spent;
  return res;
}

std::vector<Subspace> expand_selection(const KmSystem& system, const std::vector<std::uint32_t>& selection) {
  std::vector<Subspace> blocks;
  for (auto j : selection) {
    if (j >= system.cols()) throw Error(Errc::InvalidArgument, "selection column out of range");
    const auto& m = system.block_orbits[j].members;
    blocks.insert(blocks.end(), m.begin(), m.end());
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

GddInstance reconstruct_from_generators(const MatrixGroup& group, std::shared_ptr<const Spread> spread,
                                        const std::vector<std::vector<Word>>& generators) {
  if (!spread) throw Error(Errc::InvalidArgument, "no spread");
  const unsigned q = group.q(), v = group.ambient();
  if (spread->q() != q || spread->ambient() != v)
    throw Error(Errc::AmbientMismatch, "group and spread act on different spaces");
  if (!group.stabilizes(*spread))
    throw Error(Errc::GroupDoesNotStabilizeSpread, "group does not map the spread onto itself");
  const Word limit = vec::pow_q(q, v);
  std::optional<unsigned> k;
  std::vector<Subspace> blocks;
  for (const auto& rows : generators) {
    for (Word r : rows)
      if (r >= limit) throw Error(Errc::DecodeError, "row integer " + std::to_string(r) + " out of range");
    const Subspace u = Subspace::span(q, v, rows);
    if (u.dim() != rows.size()) throw Error(Errc::DecodeError, "generator rows are dependent");
    if (k && *k != u.dim()) throw Error(Errc::DecodeError, "generators differ in dimension");
    k = u.dim();
    const Orbit o = orbit_of(group, u);
    blocks.insert(blocks.end(), o.members.begin(), o.members.end());
  }
  std::sort(blocks.begin(), blocks.end());
  if (std::adjacent_find(blocks.begin(), blocks.end()) != blocks.end())
    throw Error(Errc::DuplicateBlocks, "generator orbits overlap");
  GddInstance out;
  const unsigned g = spread->element_dim();
  out.params = {q, v, g, k.value_or(0), 0};
  if (k && *k >= 2) {
    const BigInt lines_per_block = gaussian_binomial(*k, 2, q);
    const BigInt uncovered = gaussian_binomial(v, 2, q) - gaussian_binomial(g, 2, q) * spread->size();
    const BigInt covered = lines_per_block * blocks.size();
    if (covered % uncovered == 0) out.params.lambda = to_u64(covered / uncovered);
  }
  out.spread = std::move(spread);
  out.blocks = std::move(blocks);
  return out;
}

}  // namespace qgdd
