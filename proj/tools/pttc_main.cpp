#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pttc/engine.hpp"
#include "pttc/harness.hpp"
#include "pttc/instances.hpp"
#include "pttc/market.hpp"
#include "pttc/oracles.hpp"

namespace {

bool zero_noise_env() {
  const char* v = std::getenv("PTTC_ZERO_NOISE");
  return v != nullptr && std::string(v) == "1";
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoi(item));
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private top trading cycles: simulator, oracles, privacy audit"};
  app.require_subcommand(1);

  // --- run ---
  auto* run = app.add_subcommand("run", "Run the mechanism over trials and report utility CSV");
  std::string run_market, run_gen, run_out, eps_grid_text, n_grid_text;
  double run_eps = 1.0, run_d1 = -1.0, run_d2 = -1.0, run_beta = -1.0;
  std::uint64_t run_seed = 0;
  int run_trials = 1000;
  run->add_option("--market", run_market, "Market file (header 'k n', one agent per line)");
  run->add_option("--gen", run_gen, "Generator spec, e.g. random:n=20,k=4 or lb_marginal:k=3,n=200,b=1");
  run->add_option("--epsilon", run_eps, "Privacy parameter epsilon")->capture_default_str();
  run->add_option("--delta1", run_d1, "delta_1 (default 1/n^3)");
  run->add_option("--delta2", run_d2, "delta_2 (default 1/n^3)");
  run->add_option("--beta", run_beta, "beta (default 1/n^3)");
  run->add_option("--seed", run_seed, "Base seed; trial t uses seed XOR t")->capture_default_str();
  run->add_option("--trials", run_trials, "Trials per grid point")->capture_default_str();
  run->add_option("--out", run_out, "CSV output path (default: stdout)");
  run->add_option("--epsilon-grid", eps_grid_text, "Comma list of epsilons to sweep");
  run->add_option("--n-grid", n_grid_text, "Comma list of generator sizes to sweep");

  // --- audit ---
  auto* audit = app.add_subcommand("audit", "Estimate the privacy ratio of one output event");
  std::string audit_gen = "lb_marginal:k=3,n=12", audit_mech = "pttc";
  int audit_agent = 0, audit_good = 1;
  double audit_eps = 1.0, audit_slack = 0.05;
  long long audit_trials = 100000;
  std::uint64_t audit_seed = 0;
  audit->add_option("--gen", audit_gen, "Attack pair generator (lb_marginal or lb_joint; b supplies the pair)")
      ->capture_default_str();
  audit->add_option("--agent", audit_agent, "Observed agent index (0-based)")->capture_default_str();
  audit->add_option("--good", audit_good, "Observed good id (0-based)")->capture_default_str();
  audit->add_option("--epsilon", audit_eps, "Epsilon the mechanism is audited against")
      ->capture_default_str();
  audit->add_option("--trials", audit_trials, "Trials per side")->capture_default_str();
  audit->add_option("--slack", audit_slack, "Additive Monte-Carlo slack")->capture_default_str();
  audit->add_option("--seed", audit_seed, "Base seed")->capture_default_str();
  audit->add_option("--mech", audit_mech, "Mechanism: pttc or ttc")->capture_default_str();

  // --- oracle ---
  auto* oracle = app.add_subcommand("oracle", "Exact non-private allocation for a market file");
  std::string oracle_market, oracle_method = "ttc", oracle_out;
  std::uint64_t oracle_seed = 0;
  oracle->add_option("--market", oracle_market, "Market file")->required();
  oracle->add_option("--method", oracle_method, "ttc or ip")->capture_default_str();
  oracle->add_option("--seed", oracle_seed, "Seed for ttc tie randomness")->capture_default_str();
  oracle->add_option("--out", oracle_out, "Allocation output path (default: stdout)");

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "Emit a market file from a generator spec");
  std::string gen_spec, gen_out;
  std::uint64_t gen_seed = 0;
  gen->add_option("--spec", gen_spec, "Generator spec")->required();
  gen->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Market output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      pttc::ExperimentSpec spec;
      if (!run_market.empty() && !run_gen.empty()) {
        std::cerr << "run: give either --market or --gen, not both\n";
        return 1;
      }
      if (!run_market.empty()) {
        spec.market_file = run_market;
      } else if (!run_gen.empty()) {
        spec.gen = pttc::parse_generator_spec(run_gen);
      } else {
        std::cerr << "run: one of --market or --gen is required\n";
        return 1;
      }
      spec.epsilon = run_eps;
      spec.delta1 = run_d1;
      spec.delta2 = run_d2;
      spec.beta = run_beta;
      spec.trials = run_trials;
      spec.seed = run_seed;
      spec.zero_noise = zero_noise_env();
      if (!eps_grid_text.empty()) spec.epsilon_grid = parse_double_list(eps_grid_text);
      if (!n_grid_text.empty()) spec.n_grid = parse_int_list(n_grid_text);
      emit(pttc::run_experiment(spec), run_out);
    } else if (audit->parsed()) {
      pttc::GeneratorSpec g = pttc::parse_generator_spec(audit_gen);
      if (g.kind == pttc::GeneratorSpec::Kind::Random) {
        std::cerr << "audit: need an attack generator (lb_marginal or lb_joint)\n";
        return 1;
      }
      pttc::GeneratorSpec g1 = g, g0 = g;
      g1.b = 1;
      g0.b = 0;
      const pttc::ExchangeMarket x = pttc::generate(g1, audit_seed);
      const pttc::ExchangeMarket x_prime = pttc::generate(g0, audit_seed);

      pttc::Mechanism mech;
      double delta = 0.0;
      if (audit_mech == "pttc") {
        const pttc::PrivacyBudget budget = pttc::default_budget(audit_eps, x.k, x.n());
        mech = pttc::pttc_mechanism(budget);
        delta = budget.delta1 + budget.delta2 + budget.beta;
      } else if (audit_mech == "ttc") {
        mech = pttc::exact_ttc_mechanism();
        delta = 0.0;
      } else {
        std::cerr << "audit: unknown mechanism '" << audit_mech << "'\n";
        return 1;
      }
      const pttc::DpAuditResult result =
          pttc::dp_audit(mech, x, x_prime, audit_agent, audit_good, audit_trials, audit_eps,
                         delta, audit_slack, audit_seed);
      std::cout << result.summary() << '\n';
      return result.pass ? 0 : 2;
    } else if (oracle->parsed()) {
      const pttc::ExchangeMarket m = pttc::read_market_file(oracle_market);
      pttc::Allocation a;
      if (oracle_method == "ip") {
        a = pttc::ip_allocate(m);
      } else if (oracle_method == "ttc") {
        pttc::Rng rng(oracle_seed);
        a = pttc::run_exact_ttc(m, rng);
      } else {
        std::cerr << "oracle: unknown method '" << oracle_method << "'\n";
        return 1;
      }
      std::ostringstream text;
      pttc::write_allocation(text, a);
      emit(text.str(), oracle_out);
    } else if (gen->parsed()) {
      const pttc::ExchangeMarket m =
          pttc::generate(pttc::parse_generator_spec(gen_spec), gen_seed);
      std::ostringstream text;
      pttc::write_market(text, m);
      emit(text.str(), gen_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
