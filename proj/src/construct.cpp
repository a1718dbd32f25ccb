#include "qgdd/construct.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "qgdd/error.hpp"
#include "qgdd/grassmann.hpp"
#include "qgdd/parallel.hpp"
#include "qgdd/spread.hpp"

namespace qgdd {

BigInt fat_count(unsigned q, unsigned g, unsigned s, unsigned k) {
  if (k > s) return 0;
  BigInt num = big_pow(q, (g - 1) * (k * (k - 1) / 2)), den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= big_pow(q, g * (s - i)) - 1;
    den *= big_pow(q, k - i) - 1;
  }
  return num / den;
}

Elem coset_label(const Field& ext, Elem x) {
  if (x == 0) throw Error(Errc::InvalidArgument, "zero has no coset label");
  Elem best = x;
  for (Elem c = 2; c < ext.q(); ++c) best = std::min(best, ext.mul(c, x));
  return best;
}

std::vector<Elem> coset_labels(const Field& ext) {
  std::set<Elem> labels;
  for (Elem x = 1; x < ext.order(); ++x) labels.insert(coset_label(ext, x));
  return {labels.begin(), labels.end()};
}

Elem det_invariant(const Subspace& u, const Field& ext) {
  const unsigned g = ext.degree();
  if (u.ambient() % g != 0) throw Error(Errc::AmbientMismatch, "ambient dimension not a multiple of g");
  const unsigned s = u.ambient() / g;
  if (u.dim() != s) throw Error(Errc::WrongDimension, "det invariant needs dim U = s");
  std::vector<std::vector<Elem>> m(s);
  for (unsigned i = 0; i < s; ++i) m[i] = unflatten_encoding(ext, u.rows()[i], s).coords;
  Elem det = 1;
  for (unsigned col = 0; col < s; ++col) {
    unsigned piv = col;
    while (piv < s && m[piv][col] == 0) ++piv;
    if (piv == s) throw Error(Errc::NotFat, "subspace is not fat");
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = ext.neg(det);
    }
    det = ext.mul(det, m[col][col]);
    const Elem inv = ext.inv(m[col][col]);
    for (unsigned i = col + 1; i < s; ++i) {
      if (m[i][col] == 0) continue;
      const Elem f = ext.mul(m[i][col], inv);
      for (unsigned j = col; j < s; ++j) m[i][j] = ext.sub(m[i][j], ext.mul(f, m[col][j]));
    }
  }
  return coset_label(ext, det);
}

BigInt fat_orbit_lambda(unsigned q, unsigned g, unsigned s, unsigned k, unsigned alpha) {
  if (g < 2 || s < 3 || k < 3 || k > s)
    throw Error(Errc::InvalidArgument, "fat_orbit_lambda needs g >= 2, s >= 3, 3 <= k <= s");
  BigInt num, den = 1;
  if (k < s) {
    num = big_pow(q, (g - 1) * (k * (k - 1) / 2 - 1));
    for (unsigned i = 2; i < k; ++i) {
      num *= big_pow(q, g * (s - i)) - 1;
      den *= big_pow(q, k - i) - 1;
    }
  } else {
    num = BigInt(alpha) * big_pow(q, (g - 1) * (s * (s - 1) / 2 - 1));
    for (unsigned i = 2; i + 2 <= s; ++i) {
      num *= big_pow(q, g * i) - 1;
      den *= big_pow(q, i) - 1;
    }
  }
  return num / den;
}

GddInstance build_fat_orbit_gdd(unsigned q, unsigned g, unsigned s, unsigned k, const FatOrbitOptions& opt) {
  if (g < 2 || s < 3 || k < 3 || k > s)
    throw Error(Errc::InvalidArgument, "construction needs g >= 2, s >= 3, 3 <= k <= s");
  if (k == s && !opt.selection) throw Error(Errc::SelectionRequired, "k = s needs a class selection");
  if (k < s && opt.selection) throw Error(Errc::InvalidArgument, "a class selection only applies when k = s");
  const unsigned v = g * s;
  const BigInt total = gaussian_binomial(v, static_cast<int>(k), q);
  if (total > opt.guard)
    throw Error(Errc::TooLarge, to_string(total) + " subspaces exceed the enumeration guard");

  const Field ext = Field::create(q, g, opt.poly);
  std::vector<Elem> chosen;
  if (opt.selection) {
    const auto labels = coset_labels(ext);
    chosen = opt.selection->classes;
    std::sort(chosen.begin(), chosen.end());
    if (chosen.empty() || std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end())
      throw Error(Errc::SelectionOutOfRange, "selection must name distinct classes");
    for (Elem c : chosen)
      if (!std::binary_search(labels.begin(), labels.end(), c))
        throw Error(Errc::SelectionOutOfRange, "not a coset label: " + std::to_string(c));
  }

  const GrassmannIndex index(q, v, k);
  const unsigned workers = worker_count();
  std::vector<std::vector<Subspace>> parts(workers);
  parallel_chunks(
      index.size(),
      [&](unsigned w, std::uint64_t b, std::uint64_t e) {
        GrassmannIter it(index, FatOnly{&ext}, b, e);
        while (auto u = it.next())
          if (chosen.empty() || std::binary_search(chosen.begin(), chosen.end(), det_invariant(*u, ext)))
            parts[w].push_back(std::move(*u));
      },
      workers);

  GddInstance out;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out.blocks));
  std::sort(out.blocks.begin(), out.blocks.end());
  out.spread = std::make_shared<const Spread>(desarguesian_spread(ext, s));
  const unsigned alpha = static_cast<unsigned>(chosen.size());
  out.params = {q, v, g, k, to_u64(fat_orbit_lambda(q, g, s, k, k == s ? alpha : 1))};
  return out;
}

GddInstance gdd_from_steiner(const std::vector<Subspace>& design_blocks, const Subspace& point,
                             unsigned samples, std::uint64_t seed) {
  if (point.dim() != 1) throw Error(Errc::NotAPoint, "projection centre must be a point");
  if (design_blocks.empty()) throw Error(Errc::InvalidArgument, "empty design");
  const unsigned q = point.q(), n = point.ambient(), k = design_blocks.front().dim();
  if (n < 3 || k < 2) throw Error(Errc::InvalidArgument, "design too small to project");
  for (const auto& b : design_blocks)
    if (b.q() != q || b.ambient() != n || b.dim() != k)
      throw Error(Errc::AmbientMismatch, "design blocks differ in field, ambient or dimension");

  const GrassmannIndex lines(q, n, 2);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, lines.size() - 1);
  for (unsigned t = 0; t < samples; ++t) {
    const Subspace line = lines.unrank(pick(rng));
    const auto hits = std::count_if(design_blocks.begin(), design_blocks.end(),
                                    [&](const Subspace& b) { return contains(b, line); });
    if (hits != 1)
      throw Error(Errc::NotSteinerSampled,
                  "a sampled line lies in " + std::to_string(hits) + " blocks instead of 1");
  }

  std::vector<Subspace> groups, blocks;
  for (const auto& b : design_blocks)
    (contains(b, point) ? groups : blocks).push_back(project_through_point(b, point));
  if (groups.empty()) throw Error(Errc::NotAPartition, "no block passes through the point");
  std::sort(blocks.begin(), blocks.end());
  GddInstance out;
  out.params = {q, n - 1, k - 1, k, std::uint64_t{q} * q};
  out.spread = std::make_shared<const Spread>(Spread::from_elements(q, n - 1, std::move(groups)));
  out.blocks = std::move(blocks);
  return out;
}

}  // namespace qgdd
