// Command-line front end: prospect, build-field, verify-dist, certify, report.
// Exit codes: 0 success, 1 a mathematical check failed, 2 usage error.

#include "sinnott/abelian_field.hpp"
#include "sinnott/certifier.hpp"
#include "sinnott/cyclotomic.hpp"
#include "sinnott/error.hpp"
#include "sinnott/modular.hpp"
#include "sinnott/prospector.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace sinnott;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  u64 p = 3;
  u64 bound = 20000;
  std::size_t max_results = 1;
  std::vector<u64> tuple;
  bool autopick = false;
  int k = kDefaultPrecision;
  int d = 16;
  int levels = 3;
  u64 max_s = 120;
  bool corrupt = false;
  bool dry_run = false;
  std::string out;
  std::string in;
};

void validate_p(u64 p)
{
  // (Z/p)^2 must fit the group-ring tables.
  if (p < 3 || !is_prime(p) || p > 61)
    throw Usage(fmt::format("p must be an odd prime below 64, got {}", p));
}

void write_output(const std::string& text, const std::string& path)
{
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Usage("cannot write " + path);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<u64> resolve_tuple(const Config& cfg)
{
  if (cfg.autopick == !cfg.tuple.empty())
    throw Usage("give exactly one of --tuple and --auto");
  if (!cfg.tuple.empty())
    return cfg.tuple;
  const auto found = prospect(cfg.p, cfg.bound, 1);
  if (found.empty())
    throw CheckFailure(fmt::format("no guenstige tuple for p = {} below {}", cfg.p, cfg.bound));
  return found.front().primes;
}

// Tuple errors: residue and congruence failures are check failures, the rest usage.
CounterexampleField field_for(const Config& cfg)
{
  const auto primes = resolve_tuple(cfg);
  const auto checked = check_tuple(primes, cfg.p);
  if (const auto* rej = std::get_if<TupleRejection>(&checked)) {
    if (rej->kind == TupleRejection::Kind::Residue || rej->kind == TupleRejection::Kind::NotOneModP)
      throw CheckFailure(rej->message);
    throw Usage(rej->message);
  }
  return build_counterexample_field(primes, cfg.p);
}

int cmd_prospect(const Config& cfg)
{
  validate_p(cfg.p);
  if (cfg.bound < 2 * cfg.p + 1) {
    write_output("[]\n", cfg.out);
    return kOk;
  }
  json out = json::array();
  for (const auto& t : prospect(cfg.p, cfg.bound, cfg.max_results))
    out.push_back(t.to_json());
  write_output(dump(out), cfg.out);
  return kOk;
}

int cmd_build_field(const Config& cfg)
{
  validate_p(cfg.p);
  write_output(dump(field_for(cfg).to_json()), cfg.out);
  return kOk;
}

int cmd_verify_dist(const Config& cfg)
{
  if (cfg.max_s < 4 || cfg.max_s > kDefaultMaxConductor)
    throw Usage(fmt::format("--max-s must lie in [4, {}]", kDefaultMaxConductor));
  const auto sweep = distribution_sweep(cfg.max_s, cfg.corrupt);
  json failures = json::array();
  for (auto [r, s] : sweep.failures)
    failures.push_back({r, s});
  const json out = {{"max_s", cfg.max_s},
                    {"pairs", sweep.pairs},
                    {"failures", failures},
                    {"corrupted", cfg.corrupt},
                    {"passed", sweep.failures.empty()}};
  write_output(dump(out), cfg.out);
  return sweep.failures.empty() ? kOk : kCheckFailed;
}

int cmd_certify(const Config& cfg)
{
  validate_p(cfg.p);
  if (cfg.k < 1 || cfg.d < 3 || cfg.levels < 0 || cfg.levels > 4)
    throw Usage("need k >= 1, d >= 3 and 0 <= levels <= 4");
  CertifyOptions opts{cfg.k, cfg.d, cfg.levels};
  if (cfg.dry_run) {
    const json plan = {
        {"p", cfg.p},
        {"tuple", cfg.tuple.empty() ? json(fmt::format("auto (bound {})", cfg.bound)) : json(cfg.tuple)},
        {"ring", fmt::format("(Z/{}^{})[T]/(T^{})[(Z/{})^2], T^{} after the division in R2", cfg.p,
                             cfg.k, cfg.d, cfg.p, cfg.d - 1)},
        {"tower_levels", cfg.levels},
        {"checks", {"conditions", "R3_R4", "sfree_basis", "Q_nonzero", "torsion", "not_lambda_free",
                    "tower_descent"}},
        {"out", cfg.out.empty() ? "stdout" : cfg.out}};
    std::cout << dump(plan);
    return kOk;
  }
  const CounterexampleField field = field_for(cfg);
  const json cert = emit_certificate(field, opts, run_checks(field, opts));
  write_output(certificate_text(cert), cfg.out);
  if (!certificate_passed(cert)) {
    std::cerr << "certification failed at " << cert["failed_check"].get<std::string>() << "\n";
    return kCheckFailed;
  }
  if (!cfg.out.empty())
    std::cerr << cfg.out << ": " << cert["verdict"].get<std::string>() << "\n";
  return kOk;
}

int cmd_report(const Config& cfg)
{
  std::ifstream f(cfg.in);
  if (!f)
    throw Usage("cannot read " + cfg.in);
  json cert;
  try {
    cert = json::parse(f);
  } catch (const json::parse_error& e) {
    throw Usage(std::string("not JSON: ") + e.what());
  }
  if (cert.value("schema", "") != kCertificateSchema)
    throw Usage("not a " + std::string(kCertificateSchema) + " certificate");
  std::string text = fmt::format("tuple {}  p={} k={} d={}\n", cert["tuple"].dump(),
                                 cert["p"].get<u64>(), cert["k"].get<int>(), cert["d"].get<int>());
  for (const auto& c : cert["checks"])
    text += fmt::format("  {:<16} {}  [{}]\n", c["name"].get<std::string>(),
                        c["verdict"].get<bool>() ? "pass" : "FAIL",
                        c["precision"].value("soundness", ""));
  text += "verdict: " + cert["verdict"].get<std::string>() + "\n";
  write_output(text, cfg.out);
  return certificate_passed(cert) ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv)
{
  Config cfg;
  CLI::App app{"Circular units and Iwasawa freeness: prospecting and certification"};
  app.set_config("--config", "", "TOML file with option values; command-line flags win");
  app.require_subcommand(1);

  auto add_p = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "odd prime")->capture_default_str();
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
  };
  auto add_tuple = [&](CLI::App* sub) {
    sub->add_option("--tuple", cfg.tuple, "the p+1 primes l_1,...,l_{p+1}")->delimiter(',');
    sub->add_flag("--auto", cfg.autopick, "use the first tuple found by prospect");
    sub->add_option("--bound", cfg.bound, "search bound for --auto")->capture_default_str();
  };

  auto* prospect_cmd = app.add_subcommand("prospect", "search for guenstige (p+1)-tuples");
  add_p(prospect_cmd);
  prospect_cmd->add_option("--bound", cfg.bound, "all primes below this bound")->capture_default_str();
  prospect_cmd->add_option("--max-results", cfg.max_results, "stop after this many tuples")
      ->capture_default_str();
  add_out(prospect_cmd);

  auto* field_cmd = app.add_subcommand("build-field", "build K with Gal(K/Q) = (Z/p)^2 from a tuple");
  add_p(field_cmd);
  add_tuple(field_cmd);
  add_out(field_cmd);

  auto* dist_cmd = app.add_subcommand("verify-dist", "check the distribution relations up to s");
  dist_cmd->add_option("--max-s", cfg.max_s, "largest conductor s")->capture_default_str();
  dist_cmd->add_flag("--corrupt", cfg.corrupt, "verify a deliberately wrong relation (negative control)");
  add_out(dist_cmd);

  auto* cert_cmd = app.add_subcommand("certify", "run the non-freeness chain and write a certificate");
  add_p(cert_cmd);
  add_tuple(cert_cmd);
  cert_cmd->add_option("--k", cfg.k, "p-adic precision")->capture_default_str();
  cert_cmd->add_option("--d", cfg.d, "T-adic truncation degree")->capture_default_str();
  cert_cmd->add_option("--levels", cfg.levels, "finite tower levels (0 skips the tower)")
      ->capture_default_str();
  cert_cmd->add_flag("--dry-run", cfg.dry_run, "print the plan only");
  add_out(cert_cmd);

  auto* report_cmd = app.add_subcommand("report", "summarise a certificate");
  report_cmd->add_option("--in", cfg.in, "certificate JSON")->required();
  add_out(report_cmd);

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
    if (*prospect_cmd)
      return cmd_prospect(cfg);
    if (*field_cmd)
      return cmd_build_field(cfg);
    if (*dist_cmd)
      return cmd_verify_dist(cfg);
    if (*cert_cmd)
      return cmd_certify(cfg);
    return cmd_report(cfg);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const PrecisionError& e) {
    std::cerr << "precision: " << e.what() << "\n";
    return kUsage;
  }
}
