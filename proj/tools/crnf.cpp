#include <CLI11.hpp>

#include <map>

#include "crnf/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"crnf: exact formal normal forms for w = z^2 + zbar^2 + O(3)"};
  app.require_subcommand(1);
  crnf::RunConfig cfg;

  const std::map<std::string, crnf::Strategy> strategies{{"ortho", crnf::Strategy::ortho},
                                                         {"chain", crnf::Strategy::chain}};
  const std::map<std::string, crnf::Resonance> resonances{{"w-chain", crnf::Resonance::w_chain},
                                                          {"off", crnf::Resonance::off}};

  auto add_in = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--in", cfg.input, "input JSON file");
    if (required) opt->required();
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.output, "output file (default: stdout)"); };
  auto add_modes = [&](CLI::App* sub) {
    sub->add_option("--strategy", cfg.strategy, "ortho | chain")->transform(CLI::CheckedTransformer(strategies));
    sub->add_option("--resonance", cfg.resonance, "w-chain | off")->transform(CLI::CheckedTransformer(resonances));
  };

  auto* fischer = app.add_subcommand("fischer", "Fischer division by Q");
  fischer->require_subcommand(1);
  for (const char* verb : {"divide", "chain", "W"}) {
    auto* sub = fischer->add_subcommand(verb);
    add_in(sub, true);
    add_out(sub);
    sub->callback([&cfg, verb] { cfg.command = std::string("fischer-") + verb; });
  }

  auto* gate = app.add_subcommand("gate", "degree-2 gate g01 Q = Q(f10 z, conj)");
  gate->add_option("--f10", cfg.f10, "Gaussian rational, e.g. 1/2+3/4i")->required();
  gate->add_option("--g01", cfg.g01, "Gaussian rational")->required();
  add_out(gate);

  auto* norm = app.add_subcommand("normalize", "normalize a surface");
  add_in(norm, true);
  add_out(norm);
  add_modes(norm);
  norm->add_option("--order", cfg.order, "truncation order N (default: the surface's)");

  auto* verify = app.add_subcommand("verify", "check normal-space membership degree by degree");
  add_in(verify, true);
  add_out(verify);
  verify->add_option("--strategy", cfg.strategy, "ortho | chain")->transform(CLI::CheckedTransformer(strategies));

  auto* push = app.add_subcommand("pushforward", "image of a surface under a formal map");
  add_in(push, true);
  add_out(push);
  push->add_option("--map", cfg.map, "map JSON file")->required();

  auto* inv = app.add_subcommand("invariance", "compare NF(M) with NF(push_forward(M, phi))");
  add_in(inv, false);
  add_out(inv);
  add_modes(inv);
  inv->add_option("--map", cfg.map, "map JSON file (default: random kernel-free maps)");
  inv->add_option("--trials", cfg.trials, "number of random maps")->check(CLI::NonNegativeNumber);
  inv->add_option("--seed", cfg.seed, "seed of the first trial");
  inv->add_option("--order", cfg.order, "truncation order N");

  auto* rt = app.add_subcommand("randtest", "property trials on random surfaces");
  add_out(rt);
  add_modes(rt);
  rt->add_option("--trials", cfg.trials, "number of trials")->check(CLI::NonNegativeNumber);
  rt->add_option("--seed", cfg.seed, "seed of the first trial");
  rt->add_option("--order", cfg.order, "truncation order N (default 6)");

  for (auto* sub : {gate, norm, verify, push, inv, rt}) {
    const std::string name = sub->get_name();
    sub->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : crnf::kFailure;
  }
  return crnf::run(cfg);
}
