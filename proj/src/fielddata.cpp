#include "raylat/fielddata.hpp"

#include "raylat/error.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace raylat {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& code, const std::string& message) {
  throw Error("fielddata." + code, message);
}

Int read_int(const json& j, const std::string& what) {
  if (j.is_string()) return parse_int(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<long long>());
  fail("parse", what + ": expected an integer string");
}

Rational read_rational(const json& j, const std::string& what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  fail("parse", what + ": expected a rational string");
}

int read_small(const json& j, const std::string& what) {
  Int v = read_int(j, what);
  if (v < 0 || v > 1000) fail("parse", what + ": out of range");
  return static_cast<int>(v);
}

IntVector read_int_list(const json& j, const std::string& what) {
  if (!j.is_array()) fail("parse", what + ": expected a list");
  IntVector out;
  for (const auto& e : j) out.push_back(read_int(e, what));
  return out;
}

RationalVector read_rational_list(const json& j, const std::string& what) {
  if (!j.is_array()) fail("parse", what + ": expected a list");
  RationalVector out;
  for (const auto& e : j) out.push_back(read_rational(e, what));
  return out;
}

bool valid_decimal_real(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
    } else if (s[i] == '.' && !dot) {
      dot = true;
    } else {
      return false;
    }
  }
  return digits;
}

const std::set<std::string> kKeys = {
    "label", "poly", "degree", "signature", "disc", "integral_basis", "index", "class_number",
    "narrow_class_number", "units", "torsion", "regulator", "prime_splitting"};

}  // namespace

FieldDescriptor parse_field_file(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    fail("parse", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("parse", "field file must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.count(key)) fail("parse", "unknown key '" + key + "'");
  }
  for (const auto& key : kKeys) {
    if (!doc.contains(key)) fail("parse", "missing key '" + key + "'");
  }

  FieldDescriptor fd;
  if (!doc["label"].is_string()) fail("parse", "label must be a string");
  fd.label = doc["label"].get<std::string>();
  fd.poly = read_int_list(doc["poly"], "poly");
  fd.degree = read_small(doc["degree"], "degree");
  const json& sig = doc["signature"];
  if (!sig.is_array() || sig.size() != 2) fail("parse", "signature must be [r1, r2]");
  fd.r1 = read_small(sig[0], "signature");
  fd.r2 = read_small(sig[1], "signature");
  fd.disc = read_int(doc["disc"], "disc");
  fd.index = read_int(doc["index"], "index");
  fd.class_number = read_int(doc["class_number"], "class_number");
  if (!doc["narrow_class_number"].is_null()) {
    fd.narrow_class_number = read_int(doc["narrow_class_number"], "narrow_class_number");
  }
  const json& basis = doc["integral_basis"];
  if (!basis.is_array()) fail("parse", "integral_basis must be a list of rows");
  for (const auto& row : basis) fd.integral_basis.push_back(read_rational_list(row, "integral_basis"));
  const json& units = doc["units"];
  if (!units.is_array()) fail("parse", "units must be a list");
  for (const auto& u : units) fd.units.push_back(read_int_list(u, "units"));
  const json& torsion = doc["torsion"];
  if (!torsion.is_object() || !torsion.contains("gen") || !torsion.contains("order") || torsion.size() != 2) {
    fail("parse", "torsion must be {\"gen\", \"order\"}");
  }
  fd.torsion_gen = read_int_list(torsion["gen"], "torsion.gen");
  fd.torsion_order = read_int(torsion["order"], "torsion.order");
  if (!doc["regulator"].is_null()) {
    if (!doc["regulator"].is_string()) fail("parse", "regulator must be a decimal string");
    std::string reg = doc["regulator"].get<std::string>();
    if (!valid_decimal_real(reg)) fail("parse", "regulator is not a decimal real: '" + reg + "'");
    fd.regulator = reg;
  }
  const json& splitting = doc["prime_splitting"];
  if (!splitting.is_object()) fail("parse", "prime_splitting must be an object");
  for (const auto& [key, list] : splitting.items()) {
    Int p = parse_int(key);
    if (p < 2 || p > Int(std::numeric_limits<std::int32_t>::max()) || !is_prime(to_i64(p))) {
      fail("parse", "prime_splitting key is not a prime: " + key);
    }
    if (!list.is_array() || list.empty()) fail("parse", "prime_splitting entry must be a nonempty list");
    std::vector<SplittingOverride> primes;
    for (const auto& e : list) {
      if (!e.is_object() || !e.contains("gen_poly") || !e.contains("e") || !e.contains("f")) {
        fail("parse", "prime_splitting entries need gen_poly, e, f");
      }
      SplittingOverride o;
      o.gen_poly = read_rational_list(e["gen_poly"], "gen_poly");
      o.e = read_small(e["e"], "e");
      o.f = read_small(e["f"], "f");
      if (o.e < 1 || o.f < 1) fail("parse", "prime_splitting e and f must be positive");
      primes.push_back(std::move(o));
    }
    fd.prime_splitting.emplace(p, std::move(primes));
  }

  // Structural constraints.
  const int n = degree(fd.poly);
  if (n < 1 || fd.poly[static_cast<std::size_t>(n)] != 1 || fd.poly.size() != static_cast<std::size_t>(n) + 1) {
    fail("monic", "defining polynomial must be monic without trailing zeros");
  }
  if (n != fd.degree) fail("shape", "degree does not match the polynomial");
  if (n < 2) fail("degree", "degree must be at least 2");
  if (n > 8) fail("degree", "degree above 8 is not supported");
  if (fd.r1 + 2 * fd.r2 != n) fail("signature", "signature does not satisfy n = r1 + 2 r2");
  if (fd.integral_basis.size() != static_cast<std::size_t>(n)) fail("shape", "integral_basis must have n rows");
  for (const auto& row : fd.integral_basis) {
    if (row.size() != static_cast<std::size_t>(n)) fail("shape", "integral_basis rows must have n entries");
  }
  if (fd.units.size() != static_cast<std::size_t>(fd.unit_rank())) {
    fail("shape", "expected " + std::to_string(fd.unit_rank()) + " fundamental units");
  }
  for (const auto& u : fd.units) {
    if (u.size() != static_cast<std::size_t>(n)) fail("shape", "unit coordinates must have n entries");
  }
  if (fd.torsion_gen.size() != static_cast<std::size_t>(n)) fail("shape", "torsion.gen must have n entries");
  if (fd.torsion_order < 2) fail("shape", "torsion order must be at least 2");
  if (fd.index < 1) fail("shape", "index must be positive");
  if (fd.class_number < 1) fail("shape", "class_number must be positive");
  if (fd.narrow_class_number && *fd.narrow_class_number < 1) fail("shape", "narrow_class_number must be positive");
  if (abs(fd.disc) < 3) fail("discriminant", "|d_K| must be at least 3");
  Int poly_disc = poly_discriminant(fd.poly);
  if (poly_disc != fd.disc * fd.index * fd.index) {
    fail("discriminant", "discriminant inconsistent: disc(poly) = " + poly_disc.str() + " but d_K * index^2 = " +
                             Int(fd.disc * fd.index * fd.index).str());
  }
  for (const Int& p : prime_factors(fd.index)) {
    if (!fd.prime_splitting.count(p)) {
      fail("splitting", "missing prime_splitting override for index divisor " + p.str());
    }
  }
  for (const auto& [p, primes] : fd.prime_splitting) {
    int sum = 0;
    for (const auto& o : primes) sum += o.e * o.f;
    if (sum != n) fail("splitting", "override for p = " + p.str() + " has sum e*f != n");
  }
  return fd;
}

FieldDescriptor load_field_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("fielddata.io", "cannot open field file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_field_file(buf.str());
}

std::string serialize_field(const FieldDescriptor& fd) {
  auto ints = [](const IntVector& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(e.str());
    return a;
  };
  auto rats = [](const RationalVector& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(to_string(e));
    return a;
  };
  json doc;
  doc["label"] = fd.label;
  doc["poly"] = ints(fd.poly);
  doc["degree"] = std::to_string(fd.degree);
  doc["signature"] = json::array({std::to_string(fd.r1), std::to_string(fd.r2)});
  doc["disc"] = fd.disc.str();
  json basis = json::array();
  for (const auto& row : fd.integral_basis) basis.push_back(rats(row));
  doc["integral_basis"] = basis;
  doc["index"] = fd.index.str();
  doc["class_number"] = fd.class_number.str();
  doc["narrow_class_number"] = fd.narrow_class_number ? json(fd.narrow_class_number->str()) : json(nullptr);
  json units = json::array();
  for (const auto& u : fd.units) units.push_back(ints(u));
  doc["units"] = units;
  doc["torsion"] = {{"gen", ints(fd.torsion_gen)}, {"order", fd.torsion_order.str()}};
  doc["regulator"] = fd.regulator ? json(*fd.regulator) : json(nullptr);
  json splitting = json::object();
  for (const auto& [p, primes] : fd.prime_splitting) {
    json list = json::array();
    for (const auto& o : primes) {
      list.push_back({{"gen_poly", rats(o.gen_poly)}, {"e", std::to_string(o.e)}, {"f", std::to_string(o.f)}});
    }
    splitting[p.str()] = list;
  }
  doc["prime_splitting"] = splitting;
  return doc.dump(2) + "\n";
}

bool ValidationReport::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

const Check* ValidationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

FieldDescriptor load_validated_field(const std::string& path, long precision, long precision_cap) {
  FieldDescriptor fd = load_field_file(path);
  ValidationReport report = validate_field(fd, precision, precision_cap);
  for (const auto& c : report.checks) {
    if (!c.pass) throw Error("fielddata.validation", "check '" + c.name + "' failed: " + c.witness);
  }
  return fd;
}

}  // namespace raylat
