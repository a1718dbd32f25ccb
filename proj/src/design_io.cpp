#include "qgdd/design_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qgdd/error.hpp"

namespace qgdd {

namespace {

using nlohmann::json;

void write_rows(std::ostringstream& out, const std::vector<Word>& rows) {
  out << '[';
  for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? "," : "") << rows[i];
  out << ']';
}

void write_list(std::ostringstream& out, const char* key, RowList list, bool last) {
  std::sort(list.begin(), list.end());
  out << "  \"" << key << "\": [";
  for (std::size_t i = 0; i < list.size(); ++i) {
    out << (i ? ",\n    " : "\n    ");
    write_rows(out, list[i]);
  }
  out << (list.empty() ? "]" : "\n  ]") << (last ? "\n" : ",\n");
}

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::DecodeError, what); }

const json& field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key \"") + key + "\"");
  return *it;
}

std::uint64_t unsigned_at(const json& j, const char* key) {
  const json& x = field(j, key);
  if (!x.is_number_unsigned()) bad(std::string("\"") + key + "\" must be a non-negative integer");
  return x.get<std::uint64_t>();
}

RowList row_list(const json& j, const char* key) {
  if (!j.is_array()) bad(std::string("\"") + key + "\" must be an array");
  RowList out;
  out.reserve(j.size());
  for (const auto& sub : j) {
    if (!sub.is_array()) bad(std::string("entries of \"") + key + "\" must be arrays");
    std::vector<Word> rows;
    for (const auto& r : sub) {
      if (!r.is_number_unsigned()) bad(std::string("row integers in \"") + key + "\" must be non-negative");
      rows.push_back(r.get<std::uint64_t>());
    }
    out.push_back(std::move(rows));
  }
  return out;
}

Subspace decode(const GddParams& p, const std::vector<Word>& rows, unsigned expected_dim, const char* what) {
  const Word limit = vec::pow_q(p.q, p.v);
  for (Word r : rows)
    if (r >= limit) bad(std::string(what) + " row integer " + std::to_string(r) + " is not below q^v");
  Subspace u = Subspace::span(p.q, p.v, rows);
  if (u.dim() != rows.size()) bad(std::string(what) + " has dependent rows");
  if (u.dim() != expected_dim)
    bad(std::string(what) + " has dimension " + std::to_string(u.dim()) + ", header says " +
        std::to_string(expected_dim));
  return u;
}

}  // namespace

std::string write_design(const DesignFile& f) {
  std::ostringstream out;
  const auto& p = f.params;
  out << "{\n  \"schema_version\": " << f.schema_version << ",\n  \"q\": " << p.q << ",\n  \"v\": " << p.v
      << ",\n  \"g\": " << p.g << ",\n  \"k\": " << p.k << ",\n  \"lambda\": " << p.lambda
      << ",\n  \"flattened\": " << (f.flattened ? "true" : "false") << ",\n";
  if (f.group) {
    out << "  \"group\": {\n    \"order\": " << f.group->order << ",\n    \"generators\": [";
    for (std::size_t i = 0; i < f.group->generators.size(); ++i) {
      out << (i ? ", " : "");
      write_rows(out, f.group->generators[i]);
    }
    out << "]\n  },\n";
  }
  if (f.orbit_generators) write_list(out, "orbit_generators", *f.orbit_generators, false);
  write_list(out, "spread", f.spread, false);
  write_list(out, "blocks", f.blocks, true);
  out << "}\n";
  return out.str();
}

DesignFile parse_design(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) bad("design file must be a JSON object");
  DesignFile f;
  f.schema_version = static_cast<int>(unsigned_at(j, "schema_version"));
  if (f.schema_version != DesignFile::kSchemaVersion)
    bad("unsupported schema_version " + std::to_string(f.schema_version));
  const auto small = [&](const char* key) {
    const auto x = unsigned_at(j, key);
    if (x > 64) bad(std::string("\"") + key + "\" out of range");
    return static_cast<unsigned>(x);
  };
  f.params.q = small("q");
  f.params.v = small("v");
  f.params.g = small("g");
  f.params.k = small("k");
  f.params.lambda = unsigned_at(j, "lambda");
  if (const auto it = j.find("flattened"); it != j.end()) {
    if (!it->is_boolean()) bad("\"flattened\" must be a boolean");
    f.flattened = it->get<bool>();
  }
  f.spread = row_list(field(j, "spread"), "spread");
  f.blocks = row_list(field(j, "blocks"), "blocks");
  if (const auto it = j.find("group"); it != j.end()) {
    if (!it->is_object()) bad("\"group\" must be an object");
    DesignFile::Group g;
    g.order = unsigned_at(*it, "order");
    g.generators = row_list(field(*it, "generators"), "generators");
    f.group = std::move(g);
  }
  if (const auto it = j.find("orbit_generators"); it != j.end())
    f.orbit_generators = row_list(*it, "orbit_generators");
  return f;
}

DesignFile from_instance(const GddInstance& inst) {
  DesignFile f;
  f.params = inst.params;
  if (inst.spread)
    for (const auto& e : inst.spread->elements()) f.spread.push_back(e.encoding());
  for (const auto& b : inst.blocks) f.blocks.push_back(b.encoding());
  return f;
}

GddInstance to_instance(const DesignFile& f) {
  const auto& p = f.params;
  if (!is_prime(p.q) || p.q > kMaxLinalgPrime) bad("q must be a supported prime");
  if (p.v == 0 || vec::pow_q(p.q, p.v) > (Word{1} << 62) / p.q || p.v > 62) bad("v out of range");
  if (p.g == 0 || p.v % p.g != 0) bad("g must divide v");
  GddInstance inst;
  inst.params = p;
  std::vector<Subspace> elements;
  elements.reserve(f.spread.size());
  for (const auto& rows : f.spread) elements.push_back(decode(p, rows, p.g, "spread element"));
  inst.spread = std::make_shared<const Spread>(Spread::from_elements(p.q, p.v, std::move(elements)));
  inst.blocks.reserve(f.blocks.size());
  for (const auto& rows : f.blocks) {
    const Word limit = vec::pow_q(p.q, p.v);
    for (Word r : rows)
      if (r >= limit) bad("block row integer " + std::to_string(r) + " is not below q^v");
    Subspace u = Subspace::span(p.q, p.v, rows);
    if (u.dim() != rows.size()) bad("block has dependent rows");
    inst.blocks.push_back(std::move(u));
  }
  return inst;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::DecodeError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << text;
  if (!out) throw Error(Errc::InvalidArgument, "write failed for " + path);
}

}  // namespace qgdd
