// qgdd: admissibility tables, constructions, searches and verification of q-GDDs.

#include <cctype>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgdd/construct.hpp"
#include "qgdd/design_io.hpp"
#include "qgdd/error.hpp"
#include "qgdd/field.hpp"
#include "qgdd/gdd.hpp"
#include "qgdd/km_search.hpp"
#include "qgdd/params.hpp"
#include "qgdd/spread.hpp"

namespace {

using namespace qgdd;

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string describe(const GddParams& p) {
  std::ostringstream out;
  out << "(" << p.v << "," << p.g << "," << p.k << "," << p.lambda << ")_" << p.q;
  return out.str();
}

std::string histogram(const std::map<std::uint64_t, std::uint64_t>& h) {
  std::string out;
  for (const auto& [value, count] : h) out += (out.empty() ? "" : " ") + std::to_string(value) + ":" + std::to_string(count);
  return out.empty() ? "-" : out;
}

// Prints a verification report; returns true iff it is a GDD with the expected index.
bool print_report(const VerificationReport& r, std::optional<std::uint64_t> expected_lambda) {
  std::cout << "blocks: " << r.block_count << "\n";
  std::cout << "lambda observed: "
            << (r.lambda_observed ? std::to_string(*r.lambda_observed) : std::string("not constant")) << "\n";
  std::cout << "line coverage (count:lines): " << histogram(r.line_histogram) << "\n";
  if (r.expected_block_count)
    std::cout << "expected block count: " << to_string(*r.expected_block_count)
              << (r.block_count_ok ? " (ok)" : " (mismatch)") << "\n";
  if (r.expected_replication)
    std::cout << "expected replication: " << to_string(*r.expected_replication)
              << (r.replication_ok ? " (ok)" : " (mismatch)") << "\n";
  std::cout << "replication (blocks:points): " << histogram(r.replication_histogram) << "\n";
  for (const auto& line : r.offending_lines) {
    std::cout << "offending line:";
    for (Word w : line.rows()) std::cout << ' ' << w;
    std::cout << "\n";
  }
  bool ok = r.is_gdd;
  if (ok && expected_lambda && r.lambda_observed != expected_lambda) {
    std::cout << "header lambda " << *expected_lambda << " does not match\n";
    ok = false;
  }
  std::cout << (ok ? "result: GDD\n" : "result: not a GDD\n");
  return ok;
}

void require_prime(unsigned q) {
  if (!is_prime(q)) throw UsageError("q must be prime");
}

std::optional<std::vector<unsigned>> parse_poly(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::vector<unsigned> poly;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) poly.push_back(static_cast<unsigned>(std::stoul(item)));
  } catch (const std::exception&) {
    throw UsageError("cannot parse polynomial \"" + text + "\"");
  }
  return poly;
}

// Polynomial in the primitive element a, e.g. "a+1", "2a^2+a", "1".
Elem parse_element(const Field& ext, const std::string& text) {
  const unsigned q = ext.q();
  Elem value = 0;
  std::size_t i = 0;
  const auto bad = [&]() -> Elem { throw UsageError("cannot parse class \"" + text + "\""); };
  if (text.empty()) bad();
  while (i < text.size()) {
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
      negative = text[i] == '-';
      ++i;
    } else if (i != 0) {
      bad();
    }
    unsigned coeff = 1;
    bool have_coeff = false;
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) {
      coeff = static_cast<unsigned>(std::stoul(text.substr(i, j - i)) % q);
      have_coeff = true;
      i = j;
    }
    if (i < text.size() && text[i] == '*') ++i;
    std::uint64_t power = 0;
    if (i < text.size() && text[i] == 'a') {
      power = 1;
      ++i;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::size_t k = i;
        while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
        if (k == i) bad();
        power = std::stoull(text.substr(i, k - i));
        i = k;
      }
    } else if (!have_coeff) {
      bad();
    }
    Elem term = ext.mul(coeff, ext.exp(power));
    if (negative) term = ext.neg(term);
    value = ext.add(value, term);
  }
  return value;
}

OrbitSelection parse_classes(const Field& ext, const std::string& text) {
  OrbitSelection sel;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Elem x = parse_element(ext, item);
    if (x == 0) throw Error(Errc::SelectionOutOfRange, "class \"" + item + "\" is zero");
    sel.classes.push_back(coset_label(ext, x));
  }
  return sel;
}

void write_design_file(const std::string& path, const DesignFile& f) {
  write_file(path, write_design(f));
  std::cerr << "wrote " << path << "\n";
}

std::string default_path(const GddParams& p) {
  return "gdd_" + std::to_string(p.v) + "_" + std::to_string(p.g) + "_" + std::to_string(p.k) + "_" +
         std::to_string(p.lambda) + "_q" + std::to_string(p.q) + ".json";
}

// Re-reads an emitted file and verifies it as cmd_verify would.
void self_check(const std::string& text, std::uint64_t lambda) {
  const auto inst = to_instance(parse_design(text));
  const auto r = verify(inst);
  if (!r.is_gdd || r.lambda_observed != lambda)
    throw std::logic_error("internal error: emitted design fails verification");
}

// ---- admissible ------------------------------------------------------------

struct AdmissibleArgs {
  unsigned q = 2, vmax = 14;
  std::string format = "table";
};

int run_admissible(const AdmissibleArgs& a) {
  require_prime(a.q);
  if (a.vmax > 64) throw UsageError("vmax must be at most 64");
  const auto rows = admissible_table(a.q, a.vmax);
  if (a.format == "json") std::cout << render_table_json(rows);
  else if (a.format == "csv") std::cout << render_table_csv(rows);
  else std::cout << render_table_text(rows);
  return kOk;
}

// ---- construct -------------------------------------------------------------

struct ConstructArgs {
  unsigned q = 2, g = 2, s = 3, k = 3;
  std::string classes, poly, out;
  unsigned alpha = 0;
  std::uint64_t guard = kBruteForceGuard;
};

int run_construct(const ConstructArgs& a) {
  require_prime(a.q);
  FatOrbitOptions opt;
  opt.poly = parse_poly(a.poly);
  opt.guard = a.guard;
  const Field ext = Field::create(a.q, a.g, opt.poly);
  if (!a.classes.empty() && a.alpha) throw UsageError("--classes and --alpha are exclusive");
  if (!a.classes.empty()) opt.selection = parse_classes(ext, a.classes);
  if (a.alpha) {
    const auto labels = coset_labels(ext);
    if (a.alpha > labels.size()) throw Error(Errc::SelectionOutOfRange, "alpha exceeds the number of classes");
    opt.selection = OrbitSelection{{labels.begin(), labels.begin() + a.alpha}};
  }
  if (a.k == a.s && !opt.selection) {
    opt.selection = OrbitSelection{{1}};
    std::cerr << "no classes given, using class 1\n";
  }
  const auto inst = build_fat_orbit_gdd(a.q, a.g, a.s, a.k, opt);
  std::cout << "parameters: " << describe(inst.params) << "\n";
  std::cout << "predicted lambda: " << inst.params.lambda << "\n";
  const auto report = verify(inst);
  const bool ok = print_report(report, inst.params.lambda);
  if (!ok) throw std::logic_error("internal error: constructed design fails verification");
  const auto text = write_design(from_instance(inst));
  self_check(text, inst.params.lambda);
  write_design_file(a.out.empty() ? default_path(inst.params) : a.out, from_instance(inst));
  return kOk;
}

// ---- verify ----------------------------------------------------------------

int run_verify(const std::string& path) {
  DesignFile f;
  GddInstance inst;
  try {
    f = parse_design(read_file(path));
    inst = to_instance(f);
  } catch (const Error& e) {
    if (e.code() != Errc::DecodeError) {
      std::cout << "invalid design: " << e.what() << "\n";
      return kDomainFailure;
    }
    throw;
  }
  std::cout << "file: " << path << "\n";
  std::cout << "parameters: " << describe(f.params) << "\n";
  std::cout << "groups: " << inst.spread->size() << "\n";
  try {
    return print_report(verify(inst), f.params.lambda) ? kOk : kDomainFailure;
  } catch (const Error& e) {
    std::cout << "result: not a GDD (" << e.what() << ")\n";
    return kDomainFailure;
  }
}

// ---- search ----------------------------------------------------------------

struct SearchArgs {
  unsigned q = 2, v = 6, g = 2, k = 3;
  std::uint64_t lambda = 2;
  std::string group = "1", spread = "singer", method = "auto", out;
  std::size_t limit = 1;
  std::uint64_t budget = 100'000'000, seed = 1, guard = kBruteForceGuard;
  bool force = false;
};

int run_search(const SearchArgs& a) {
  require_prime(a.q);
  const auto params = check_conditions(a.q, a.v, a.g, a.k, a.lambda);
  if (!params.admissible) {
    std::string why;
    for (const auto& c : params.failed_conditions) why += (why.empty() ? "" : "; ") + c;
    std::cout << "inadmissible: " << why << "\n";
    if (!a.force) return kDomainFailure;
  }
  if (a.v % a.g != 0) throw UsageError("g must divide v");
  const Field ext = Field::create(a.q, a.v);
  std::shared_ptr<const Spread> spread;
  if (a.spread == "singer") spread = std::make_shared<const Spread>(singer_spread(ext, a.g));
  else spread = std::make_shared<const Spread>(desarguesian_spread(a.q, a.g, a.v / a.g));
  const auto group = [&] {
    try {
      return parse_group(ext, a.group);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();
  std::cerr << "group order " << group.order() << "\n";
  const auto started = std::chrono::steady_clock::now();
  const auto system = build_km_system(group, *spread, a.k, a.guard);
  std::cerr << "system " << system.rows() << "x" << system.cols() << "\n";

  SolveOptions opt;
  opt.limit = a.limit;
  opt.node_budget = a.budget;
  opt.seed = a.seed;
  opt.method = a.method == "exact" ? SolveMethod::Exact
               : a.method == "local" ? SolveMethod::LocalSearch
                                      : SolveMethod::Auto;
  const auto result = solve_lambda_cover(system, a.lambda, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::cerr << "nodes " << result.nodes << ", " << secs << " s\n";
  if (result.selections.empty()) {
    std::cout << "no solution found" << (result.exhausted ? " (search exhausted)" : " (budget reached)") << "\n";
    return kDomainFailure;
  }

  GddParams p{a.q, a.v, a.g, a.k, a.lambda};
  for (std::size_t i = 0; i < result.selections.size(); ++i) {
    const auto& sel = result.selections[i];
    GddInstance inst{p, spread, expand_selection(system, sel)};
    std::cout << "solution " << i + 1 << ": " << sel.size() << " orbits\n";
    if (!print_report(verify(inst), a.lambda))
      throw std::logic_error("internal error: search result fails verification");
    DesignFile f = from_instance(inst);
    DesignFile::Group grp;
    grp.order = group.order();
    for (const auto& m : group.generators()) grp.generators.emplace_back(m.rows().begin(), m.rows().end());
    f.group = std::move(grp);
    RowList reps;
    for (auto c : sel) reps.push_back(system.block_orbits[c].representative.encoding());
    f.orbit_generators = std::move(reps);
    const auto text = write_design(f);
    self_check(text, a.lambda);
    std::string path = a.out.empty() ? default_path(p) : a.out;
    if (result.selections.size() > 1) {
      const auto dot = path.rfind(".json");
      path = (dot == std::string::npos ? path : path.substr(0, dot)) + "_" + std::to_string(i + 1) + ".json";
    }
    write_design_file(path, f);
  }
  return kOk;
}

// ---- lambda-max ------------------------------------------------------------

struct LambdaMaxArgs {
  unsigned q = 2, v = 6, g = 2, k = 3;
  std::uint64_t guard = kBruteForceGuard;
  bool enumerate = false;
};

int run_lambda_max(const LambdaMaxArgs& a) {
  require_prime(a.q);
  if (a.g == 0 || a.v % a.g != 0 || a.k < 2 || a.k + a.g > a.v) throw UsageError("need g | v and 2 <= k <= v - g");
  const auto [known, source] = known_lambda_max(a.q, a.v, a.g, a.k);
  std::cout << "known: " << (known ? to_string(*known) : std::string("-"));
  if (source == LambdaMaxSource::DesarguesianClosedForm) std::cout << " (Desarguesian spread)";
  if (source == LambdaMaxSource::Enumeration) std::cout << " (enumeration)";
  std::cout << "\n";
  if (!a.enumerate) return kOk;
  const auto spread = desarguesian_spread(a.q, a.g, a.v / a.g);
  const auto counted = lambda_max_bruteforce(spread, a.k, a.guard);
  std::cout << "enumerated: " << (counted ? std::to_string(*counted) : std::string("not constant")) << "\n";
  if (known && counted && BigInt(*counted) != *known) return kDomainFailure;
  return kOk;
}

// ---- supplementary ---------------------------------------------------------

struct SupplementaryArgs {
  std::string in, out;
  std::uint64_t guard = kBruteForceGuard;
};

int run_supplementary(const SupplementaryArgs& a) {
  const auto inst = to_instance(parse_design(read_file(a.in)));
  const auto before = verify(inst);
  if (!before.is_gdd || before.lambda_observed != inst.params.lambda) {
    std::cout << "input is not a GDD with the header index\n";
    return kDomainFailure;
  }
  const auto sup = supplementary(inst, a.guard);
  std::cout << "parameters: " << describe(sup.params) << "\n";
  if (!print_report(verify(sup), sup.params.lambda))
    throw std::logic_error("internal error: supplementary design fails verification");
  const auto f = from_instance(sup);
  self_check(write_design(f), sup.params.lambda);
  write_design_file(a.out.empty() ? default_path(sup.params) : a.out, f);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group divisible designs over finite fields"};
  app.require_subcommand(1);

  AdmissibleArgs adm;
  auto* c_adm = app.add_subcommand("admissible", "Admissible parameters with lambda_Delta and lambda_max");
  c_adm->add_option("--q", adm.q, "Field order (prime)")->required();
  c_adm->add_option("--vmax", adm.vmax, "Largest ambient dimension")->required();
  c_adm->add_option("--format", adm.format)->check(CLI::IsMember({"table", "json", "csv"}));

  ConstructArgs con;
  auto* c_con = app.add_subcommand("construct", "Fat-subspace construction over GF(q^g)^s");
  c_con->add_option("--q", con.q)->required();
  c_con->add_option("--g", con.g)->required();
  c_con->add_option("--s", con.s)->required();
  c_con->add_option("--k", con.k)->required();
  c_con->add_option("--classes", con.classes, "Det classes for k = s, e.g. 1,a+1");
  c_con->add_option("--alpha", con.alpha, "Use the first alpha det classes");
  c_con->add_option("--poly", con.poly, "Primitive polynomial of GF(q^g), low degree first");
  c_con->add_option("--out", con.out, "Output file");
  c_con->add_option("--guard", con.guard, "Enumeration size limit");

  std::string verify_path;
  auto* c_ver = app.add_subcommand("verify", "Verify a design file");
  c_ver->add_option("file", verify_path)->required();

  SearchArgs sea;
  auto* c_sea = app.add_subcommand("search", "Kramer-Mesner search under a prescribed group");
  c_sea->add_option("--q", sea.q)->required();
  c_sea->add_option("--v", sea.v)->required();
  c_sea->add_option("--g", sea.g)->required();
  c_sea->add_option("--k", sea.k)->required();
  c_sea->add_option("--lambda", sea.lambda)->required();
  c_sea->add_option("--group", sea.group, "Generators such as sigma^7 or sigma,phi^4");
  c_sea->add_option("--spread", sea.spread)->check(CLI::IsMember({"singer", "desarguesian"}));
  c_sea->add_option("--method", sea.method)->check(CLI::IsMember({"auto", "exact", "local"}));
  c_sea->add_option("--limit", sea.limit, "Number of solutions");
  c_sea->add_option("--budget", sea.budget, "Search node budget");
  c_sea->add_option("--seed", sea.seed);
  c_sea->add_option("--guard", sea.guard, "Enumeration size limit");
  c_sea->add_option("--out", sea.out, "Output file");
  c_sea->add_flag("--force", sea.force, "Search even if the parameters are inadmissible");

  LambdaMaxArgs lmx;
  auto* c_lmx = app.add_subcommand("lambda-max", "Index of the complete GDD");
  c_lmx->add_option("--q", lmx.q)->required();
  c_lmx->add_option("--v", lmx.v)->required();
  c_lmx->add_option("--g", lmx.g)->required();
  c_lmx->add_option("--k", lmx.k)->required();
  c_lmx->add_flag("--enumerate", lmx.enumerate, "Count all scattered subspaces of the Desarguesian spread");
  c_lmx->add_option("--guard", lmx.guard, "Enumeration size limit");

  SupplementaryArgs sup;
  auto* c_sup = app.add_subcommand("supplementary", "Complement of a design within all scattered subspaces");
  c_sup->add_option("file", sup.in)->required();
  c_sup->add_option("--out", sup.out, "Output file");
  c_sup->add_option("--guard", sup.guard, "Enumeration size limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (c_adm->parsed()) return run_admissible(adm);
    if (c_con->parsed()) return run_construct(con);
    if (c_ver->parsed()) return run_verify(verify_path);
    if (c_sea->parsed()) return run_search(sea);
    if (c_lmx->parsed()) return run_lambda_max(lmx);
    if (c_sup->parsed()) return run_supplementary(sup);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::DecodeError ? kUsage : kDomainFailure;
  } catch (const std::logic_error& e) {
    std::cerr << e.what() << "\n";
    return kDomainFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
  return kUsage;
}
