#include "raylat/cli.hpp"

#include "raylat/error.hpp"
#include "raylat/fielddata.hpp"
#include "raylat/raycount.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace raylat {

namespace {

bool input_error(const std::string& code) {
  for (const char* prefix : {"cli.", "fielddata.", "algebra.modulus", "algebra.prime", "algebra.splitting",
                             "oracle.coprime", "raycount.class", "raycount.coprime", "raycount.grid"}) {
    if (code.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

void check_config(const RunConfig& config) {
  if (config.policy.start < 2 || config.policy.start > config.policy.cap) {
    throw Error("cli.precision", "precision start must be at least 2 and at most the cap");
  }
  if (config.jobs < 1) throw Error("cli.jobs", "--jobs must be positive");
}

FieldDescriptor load(const RunConfig& config) {
  return load_validated_field(config.field_path, config.policy.start, config.policy.cap);
}

std::string field_name(const RunConfig& config, const FieldDescriptor& fd) {
  return fd.label.empty() ? config.field_path : fd.label;
}

VerifyOptions options_for(const RunConfig& config, const Ring& ring) {
  VerifyOptions opt;
  opt.lattice = config.method != Method::Oracle;
  opt.oracle = config.method != Method::Lattice;
  opt.jobs = config.jobs;
  opt.policy = config.policy;
  if (config.class_spec != "all") {
    Modulus c = parse_modulus(ring, config.class_spec);
    opt.classes.push_back(c.ideal);
  }
  return opt;
}

void write_report(const CountReport& rep, Format format, std::ostream& out) {
  out << (format == Format::Json ? report_json(rep) + "\n" : report_tsv(rep));
}

}  // namespace

std::vector<Int> parse_grid(const std::string& text) {
  std::vector<Int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw Error("cli.grid", "x grid entry '" + item + "' is not a positive integer");
    }
    Int x(item);
    if (x < 1) throw Error("cli.grid", "x grid entries must be at least 1");
    out.push_back(x);
  }
  if (out.empty()) throw Error("cli.grid", "x grid is empty");
  return out;
}

int cmd_validate(const RunConfig& config, std::ostream& out) {
  check_config(config);
  FieldDescriptor fd = load_field_file(config.field_path);
  ValidationReport rep = validate_field(fd, config.policy.start, config.policy.cap);
  if (config.format == Format::Json) {
    nlohmann::ordered_json j;
    j["field"] = field_name(config, fd);
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    j["verdict"] = rep.pass() ? "pass" : "fail";
    out << j.dump(2) << '\n';
  } else {
    out << "check\tverdict\twitness\n";
    for (const auto& c : rep.checks) out << c.name << '\t' << (c.pass ? "pass" : "fail") << '\t' << c.witness << '\n';
  }
  for (const auto& c : rep.checks) {
    if (!c.pass) throw Error("fielddata.validation", "check " + c.name + " failed: " + c.witness);
  }
  return kPass;
}

int cmd_constants(const RunConfig& config, std::ostream& out) {
  check_config(config);
  FieldDescriptor fd = load(config);
  Ring ring(fd);
  RayContext ctx = make_ray_context(ring, parse_modulus(ring, config.modulus), config.policy);
  Embeddings emb(ring, config.policy.start);
  Interval reg = field_regulator(ring, config.policy.start);

  std::vector<std::pair<std::string, std::string>> rows{
      {"n_K", std::to_string(fd.degree)},
      {"r1", std::to_string(fd.r1)},
      {"r2", std::to_string(fd.r2)},
      {"d_K", fd.disc.str()},
      {"h_K", fd.class_number.str()},
      {"R_K", reg.str(12)},
      {"alpha_K", residue_alpha_K(ring, config.policy.start).str(12)},
      {"phi_q", ctx.phi.str()},
      {"h_Kq", ctx.ray_class_number.str()},
      {"R_Kq1", q1_regulator(ring, emb, ctx).str(12)},
  };
  for (std::size_t j = 0; j < ctx.m.size(); ++j) rows.emplace_back("m_" + std::to_string(j + 1), ctx.m[j].str());
  rows.emplace_back("mu_q1", ctx.mu_q1.str());
  rows.emplace_back("F_q", F_constant(fd, ctx).str());
  rows.emplace_back("E_K", E_constant(fd, reg).str(8));

  if (config.format == Format::Json) {
    nlohmann::ordered_json j;
    j["field"] = field_name(config, fd);
    j["modulus"] = config.modulus;
    for (const auto& [k, v] : rows) j[k] = v;
    out << j.dump(2) << '\n';
  } else {
    out << "constant\tvalue\n";
    for (const auto& [k, v] : rows) out << k << '\t' << v << '\n';
  }
  return kPass;
}

int cmd_count(const RunConfig& config, std::ostream& out) {
  check_config(config);
  FieldDescriptor fd = load(config);
  Ring ring(fd);
  VerifyOptions opt = options_for(config, ring);
  opt.shell_max_x = 0;
  CountReport rep = verify_asymptotic(ring, parse_modulus(ring, config.modulus), config.xs, opt);
  rep.field = field_name(config, fd);
  write_report(rep, config.format, out);
  for (const auto& row : rep.rows) {
    if (row.lattice && row.oracle && *row.lattice != *row.oracle) return kVerificationFailure;
  }
  return kPass;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  check_config(config);
  FieldDescriptor fd = load(config);
  Ring ring(fd);
  CountReport rep = verify_asymptotic(ring, parse_modulus(ring, config.modulus), config.xs, options_for(config, ring));
  rep.field = field_name(config, fd);
  write_report(rep, config.format, out);
  return rep.verdict ? kPass : kVerificationFailure;
}

int cmd_census(const RunConfig& config, std::ostream& out) {
  check_config(config);
  if (config.xs.size() != 1) throw Error("cli.grid", "census takes a single bound --x X");
  FieldDescriptor fd = load(config);
  Ring ring(fd);
  IdealCensus census = enumerate_ideals(ring, config.xs.front());
  RayOracle oracle(ring, parse_modulus(ring, config.modulus), config.policy);
  classify(oracle, census);
  out << census_tsv(census);
  return kPass;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counts integral ideals in narrow ray classes by lattice points and by ideal census."};
  app.require_subcommand(1);

  RunConfig config;
  std::string grid = "10,100,1000,10000";
  std::string method = "both";
  std::string format = "tsv";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--field", config.field_path, "field file (JSON)")->required();
    sub->add_option("--precision-start", config.policy.start, "starting interval precision in bits");
    sub->add_option("--precision-cap", config.policy.cap, "largest precision in bits");
    sub->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
    sub->add_option("--output", config.output, "write the report here instead of stdout");
  };
  auto ray = [&](CLI::App* sub) {
    sub->add_option("--modulus", config.modulus, "unit or p:i:e,... (i-th prime above p, 0-based)");
    sub->add_option("--jobs", config.jobs, "worker threads");
  };
  auto counting = [&](CLI::App* sub) {
    ray(sub);
    sub->add_option("--class", config.class_spec, "all, or an ideal p:i:e,... in the target class");
    sub->add_option("--x", grid, "comma-separated norm bounds");
    sub->add_option("--method", method, "lattice, oracle or both")->check(CLI::IsMember({"lattice", "oracle", "both"}));
  };

  CLI::App* validate = app.add_subcommand("validate", "check a field file");
  common(validate);
  CLI::App* constants = app.add_subcommand("constants", "ray context and explicit constants");
  common(constants);
  ray(constants);
  CLI::App* count = app.add_subcommand("count", "count ideals per ray class");
  common(count);
  counting(count);
  CLI::App* verify = app.add_subcommand("verify", "count both ways and check the explicit bound");
  common(verify);
  counting(verify);
  CLI::App* census = app.add_subcommand("census", "list ideals of norm at most X");
  common(census);
  ray(census);
  census->add_option("--x", grid, "norm bound X")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  std::ostringstream buffer;
  int code = kPass;
  try {
    if (const char* cap = std::getenv("RAYLAT_PRECISION_CAP"); cap && *cap) {
      try {
        config.policy.cap = std::stol(cap);
      } catch (const std::exception&) {
        throw Error("cli.precision", std::string("RAYLAT_PRECISION_CAP is not a number: ") + cap);
      }
    }
    config.method = method == "lattice" ? Method::Lattice : method == "oracle" ? Method::Oracle : Method::Both;
    config.format = format == "json" ? Format::Json : Format::Tsv;
    if (!validate->parsed() && !constants->parsed()) config.xs = parse_grid(grid);

    if (validate->parsed()) code = cmd_validate(config, buffer);
    else if (constants->parsed()) code = cmd_constants(config, buffer);
    else if (count->parsed()) code = cmd_count(config, buffer);
    else if (verify->parsed()) code = cmd_verify(config, buffer);
    else code = cmd_census(config, buffer);
  } catch (const Error& e) {
    code = input_error(e.code()) ? kInputError : kVerificationFailure;
    err << "error [" << e.code() << "]: " << e.what() << '\n';
  } catch (const std::exception& e) {
    code = kVerificationFailure;
    err << "error [internal]: " << e.what() << '\n';
  }

  if (config.output.empty()) {
    out << buffer.str();
  } else if (!buffer.str().empty()) {
    std::ofstream file(config.output, std::ios::binary);
    file << buffer.str();
    if (!file) {
      err << "error [cli.output]: cannot write " << config.output << '\n';
      return kInputError;
    }
  }
  return code;
}

}  // namespace raylat
