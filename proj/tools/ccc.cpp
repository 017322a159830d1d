#include <CLI11.hpp>

#include <iostream>

#include "ccc/cli.hpp"

int main(int argc, char** argv) {
  using ccc::cli::RunConfig;
  CLI::App app{"Coherent-constructible correspondence toolkit for toric varieties and stacks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto fan_options = [&](CLI::App* sub) {
    sub->add_option("-i,--input", cfg.input_path, "Fan JSON file");
    sub->add_option("--fan", cfg.inline_json, "Fan JSON given inline");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output_path, "Output file (written atomically); stdout by default");
    sub->add_option("-f,--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "dot", "svg", "text"}));
  };

  auto* info = app.add_subcommand("fan-info", "Cones, smoothness and Cech nerve of a fan");
  fan_options(info);
  common(info);

  auto* skel = app.add_subcommand("skeleton", "FLTZ skeleton components of a (stacky) fan");
  fan_options(skel);
  common(skel);
  skel->add_flag_callback("--svg", [&] { cfg.format = "svg"; }, "Emit SVG");
  skel->add_flag_callback("--json", [&] { cfg.format = "json"; }, "Emit JSON");

  auto* hom = app.add_subcommand("hom", "Graded or derived homs on either side");
  fan_options(hom);
  common(hom);
  hom->add_option("--side", cfg.side, "coh or con")->check(CLI::IsMember({"coh", "con"}));
  hom->add_option("-n,--n", cfg.n, "Dimension of projective space");
  hom->add_option("--from", cfg.from, "Source: twist (coh, P^n), character (coh, fan) or generator 1..n+1 (con)");
  hom->add_option("--to", cfg.to, "Target, same conventions as --from");
  hom->add_option("-B,--bound", cfg.bound, "Degree bound for graded homs");

  auto* ver = app.add_subcommand("verify", "Run a comparison suite");
  fan_options(ver);
  common(ver);
  ver->add_option("what", cfg.what, "ccc | kappa | chambers | monodromy | generation")->required();
  ver->add_option("-n,--n", cfg.n, "Dimension (kappa without a fan: order of mu_n)");
  ver->add_option("-B,--bound", cfg.bound, "Degree bound");
  ver->add_option("--seed", cfg.seed, "Seed for randomized checks");

  auto* quiv = app.add_subcommand("quiver", "Twisted chamber quiver of P^n");
  common(quiv);
  quiv->add_option("-n,--n", cfg.n, "Dimension of projective space");
  quiv->add_option("--pic", cfg.pic, "Comma-separated Pic generators, 1 for the unit, e.g. \"L,M\"");
  quiv->add_flag("--template", cfg.template_labels, "Object and morphism letters of a twisted representation");
  quiv->add_flag_callback("--dot", [&] { cfg.format = "dot"; }, "Emit DOT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ccc::cli::kInputError;
  }
  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  return ccc::cli::run(cfg, std::cout, std::cerr);
}
