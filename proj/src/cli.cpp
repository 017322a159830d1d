#include "ccc/cli.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>
#include <unistd.h>

#include "ccc/cohside.hpp"
#include "ccc/conside.hpp"
#include "ccc/errors.hpp"
#include "ccc/fans.hpp"
#include "ccc/skeleton.hpp"

namespace ccc::cli {

namespace {

using zlin::Integer;
using zlin::IntMatrix;
using zlin::IntVector;

const std::set<std::string> kSubcommands{"fan-info", "skeleton", "hom", "verify", "quiver"};
const std::set<std::string> kFormats{"json", "dot", "svg", "text"};
const std::set<std::string> kChecks{"ccc", "kappa", "chambers", "monodromy", "generation"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument(what + " must be an integer, got \"" + s + "\"");
  return v;
}

fans::StackyFan load_fan(const RunConfig& cfg) {
  std::string text, source;
  if (!cfg.inline_json.empty()) {
    text = cfg.inline_json;
    source = "inline fan";
  } else {
    std::ifstream in(cfg.input_path);
    if (!in) throw std::invalid_argument("cannot read " + cfg.input_path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    source = cfg.input_path;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(source + ": " + e.what());
  }
  try {
    return fans::stacky_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(source + ": " + e.what());
  }
}

bool has_fan(const RunConfig& cfg) { return !cfg.inline_json.empty() || !cfg.input_path.empty(); }

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.output_path.empty())
    out << content;
  else
    write_atomic(cfg.output_path, content);
}

std::string plural(std::size_t k, const std::string& one, const std::string& many) {
  return std::to_string(k) + " " + (k == 1 ? one : many);
}

std::string simplex_word(std::size_t size, std::size_t count) {
  switch (size) {
    case 1:
      return plural(count, "vertex", "vertices");
    case 2:
      return plural(count, "edge", "edges");
    case 3:
      return plural(count, "triangle", "triangles");
    default:
      return plural(count, std::to_string(size - 1) + "-simplex", std::to_string(size - 1) + "-simplices");
  }
}

// ---------------------------------------------------------------------------

int cmd_fan_info(const RunConfig& cfg, std::ostream& out) {
  const auto sf = load_fan(cfg);
  const auto& fan = sf.fan;
  const auto nerve = fans::cech_nerve(fan);
  std::vector<std::size_t> counts;
  for (std::size_t k = 1;; ++k) {
    const std::size_t c = nerve.count_of_size(k);
    if (c == 0) break;
    counts.push_back(c);
  }
  const auto group = zlin::cokernel(sf.beta);
  if (cfg.format == "json") {
    nlohmann::json j;
    j["rank"] = fan.ambient_rank();
    j["cones"] = fan.cones().size();
    j["smooth"] = fan.is_smooth();
    j["nerve"] = counts;
    j["fan"] = fans::to_json(sf);
    j["group"] = group.describe();
    emit(cfg, j.dump(2) + "\n", out);
    return kPass;
  }
  std::ostringstream os;
  os << plural(fan.cones().size(), "cone", "cones") << ", " << (fan.is_smooth() ? "smooth" : "singular")
     << ", nerve: ";
  for (std::size_t k = 0; k < counts.size(); ++k) os << (k ? " / " : "") << simplex_word(k + 1, counts[k]);
  os << "\n";
  os << "rank " << fan.ambient_rank() << ", " << plural(fan.maximal_cones().size(), "maximal cone", "maximal cones")
     << ", " << plural(fan.rays().size(), "ray", "rays") << "\n";
  for (const auto& c : fan.maximal_cones()) os << "  " << c.to_string() << "\n";
  os << "stacky group G_beta: " << (group.is_trivial() ? "trivial" : group.describe()) << "\n";
  emit(cfg, os.str(), out);
  return kPass;
}

int cmd_skeleton(const RunConfig& cfg, std::ostream& out) {
  const auto sf = load_fan(cfg);
  const std::size_t rank = sf.fan.ambient_rank();
  const auto comps = skeleton::fltz_components(sf);
  const std::string fmt = cfg.format.empty() ? "json" : cfg.format;
  if (fmt == "svg") {
    emit(cfg, skeleton::emit_svg(comps, rank), out);
  } else if (fmt == "json") {
    emit(cfg, skeleton::to_json(comps, rank).dump(2) + "\n", out);
  } else if (fmt == "text") {
    std::ostringstream os;
    os << plural(comps.size(), "component", "components") << "\n";
    for (const auto& c : comps) {
      os << "  " << c.cone.to_string() << " x (perp + (";
      for (std::size_t i = 0; i < c.character.size(); ++i) os << (i ? "," : "") << c.character[i];
      os << "))\n";
    }
    emit(cfg, os.str(), out);
  } else {
    throw std::invalid_argument("skeleton supports --format json, svg or text");
  }
  return kPass;
}

zlin::Character parse_character(const cohside::GammaCategory& g, const std::string& s) {
  const auto& factors = g.group.invariant_factors();
  auto parts = split(s, ',');
  if (factors.empty()) {
    for (const auto& p : parts) parse_long(p, "character component");
    return g.zero();
  }
  if (parts.size() != factors.size())
    throw std::invalid_argument("character \"" + s + "\" needs " + std::to_string(factors.size()) +
                                " components for " + g.group.describe());
  IntVector raw;
  for (const auto& p : parts) raw.emplace_back(parse_long(p, "character component"));
  return zlin::reduce(g.group, raw);
}

int cmd_hom(const RunConfig& cfg, std::ostream& out) {
  nlohmann::json j;
  std::ostringstream os;
  if (cfg.side == "coh" && has_fan(cfg)) {
    const auto g = cohside::gamma_category(load_fan(cfg));
    const auto a = parse_character(g, cfg.from);
    const auto b = parse_character(g, cfg.to);
    const auto h = cohside::hom_graded(g, a, b, cfg.bound);
    j["side"] = "coh";
    j["group"] = g.group.describe();
    j["bound"] = cfg.bound;
    j["dims"] = nlohmann::json::array();
    os << "hom(" << cfg.from << ", " << cfg.to << ") in " << (g.group.is_trivial() ? "trivial group" : g.group.describe())
       << ", degrees 0.." << cfg.bound << "\n";
    os << "degree dim\n";
    for (std::size_t d = 0; d < h.dims.size(); ++d) {
      j["dims"].push_back(h.dims[d].get_ui());
      os << d << " " << h.dims[d] << "\n";
    }
    os << "total " << h.total() << "\n";
  } else if (cfg.side == "coh") {
    const long a = parse_long(cfg.from, "--from twist");
    const long b = parse_long(cfg.to, "--to twist");
    const long d = b - a;
    const auto h = cohside::pn_line_bundle_cohomology(cfg.n, d, static_cast<std::size_t>(std::abs(d)));
    j["side"] = "coh";
    j["ext"] = nlohmann::json::array();
    os << "Ext^*(O(" << a << "), O(" << b << ")) on P^" << cfg.n << "\n";
    Integer chi = 0;
    for (std::size_t i = 0; i < h.h.size(); ++i) {
      j["ext"].push_back(h.h[i].get_ui());
      os << "Ext^" << i << " " << h.h[i] << "\n";
      chi += (i % 2 == 0) ? h.h[i] : Integer(-h.h[i]);
    }
    j["euler"] = chi.get_si();
    os << "euler " << chi << "\n";
  } else if (cfg.side == "con") {
    const long a = parse_long(cfg.from, "--from generator");
    const long b = parse_long(cfg.to, "--to generator");
    const long top = static_cast<long>(cfg.n) + 1;
    if (a < 1 || a > top || b < 1 || b > top)
      throw std::invalid_argument("generators are numbered 1.." + std::to_string(top));
    const auto cat = conside::DirectedCategory::pn_chambers(cfg.n);
    const auto e = conside::rep_hom(cat, conside::corepresentable(cat, static_cast<std::size_t>(a - 1)),
                                    conside::corepresentable(cat, static_cast<std::size_t>(b - 1)));
    j["side"] = "con";
    j["ext"] = e;
    os << "Ext^*(G_" << a << ", G_" << b << ") on the P^" << cfg.n << " chamber category\n";
    long chi = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      os << "Ext^" << i << " " << e[i] << "\n";
      chi += (i % 2 == 0 ? 1 : -1) * static_cast<long>(e[i]);
    }
    j["euler"] = chi;
    os << "euler " << chi << "\n";
  } else {
    throw std::invalid_argument("--side must be coh or con");
  }
  emit(cfg, cfg.format == "json" ? j.dump(2) + "\n" : os.str(), out);
  return kPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  verify::VerifyReport r;
  if (cfg.what == "ccc") {
    r = verify::verify_ccc(cfg.n);
  } else if (cfg.what == "chambers") {
    r = verify::verify_chambers(cfg.n);
  } else if (cfg.what == "monodromy") {
    r = verify::verify_monodromy(cfg.n);
  } else if (cfg.what == "generation") {
    r = verify::verify_generation(cfg.n, cfg.seed);
  } else if (cfg.what == "kappa") {
    if (has_fan(cfg)) {
      const auto sf = load_fan(cfg);
      if (sf.fan_hat.maximal_cones().size() != 1) throw std::invalid_argument("kappa needs an affine stacky fan");
      r = verify::verify_kappa(sf.beta, sf.fan_hat.maximal_cones().front(), cfg.bound);
    } else {
      r = verify::verify_kappa(IntMatrix{{static_cast<long>(cfg.n)}}, fans::Cone(1, {IntVector{Integer(1)}}),
                               cfg.bound);
    }
  } else {
    throw std::invalid_argument("unknown check \"" + cfg.what + "\"");
  }
  emit(cfg, cfg.format == "json" ? r.to_json().dump(2) + "\n" : r.to_text(), out);
  return r.passed() ? kPass : kVerificationFailure;
}

int cmd_quiver(const RunConfig& cfg, std::ostream& out) {
  auto [pic, names] = parse_pic(cfg.pic, cfg.n);
  const std::string fmt = cfg.format.empty() ? "dot" : cfg.format;
  if (cfg.template_labels) {
    if (pic.empty()) {
      pic.assign(cfg.n, picsym::PicMonomial::unit(0));
      names.clear();
    }
    auto t = conside::twisted_rep_template(cfg.n, pic, names);
    if (fmt == "dot") {
      emit(cfg, conside::to_dot(t), out);
    } else if (fmt == "text") {
      std::ostringstream os;
      for (std::size_t i = 0; i < t.quiver.edges.size(); ++i) {
        const auto& e = t.quiver.edges[i];
        os << t.vertex_labels[e.source] << " -> " << t.vertex_labels[e.target] << " : " << t.edge_labels[i] << "\n";
      }
      emit(cfg, os.str(), out);
    } else {
      throw std::invalid_argument("--template supports --format dot or text");
    }
    return kPass;
  }
  auto q = skeleton::chamber_quiver(cfg.n, pic);
  if (!names.empty()) q.generator_names = names;
  if (fmt == "dot") {
    emit(cfg, skeleton::to_dot(q), out);
  } else if (fmt == "json") {
    emit(cfg, skeleton::to_json(q).dump(2) + "\n", out);
  } else if (fmt == "svg") {
    emit(cfg, skeleton::emit_svg(q), out);
  } else {
    std::ostringstream os;
    os << plural(q.vertices.size(), "vertex", "vertices") << ", " << plural(q.edges.size(), "edge", "edges") << "\n";
    for (const auto& e : q.edges) {
      const auto& s = q.vertices[e.source];
      const auto& t = q.vertices[e.target];
      os << s.chamber.to_string() << (s.duplicate ? "'" : "") << " [" << s.label.to_string(q.generator_names)
         << "] -> " << t.chamber.to_string() << (t.duplicate ? "'" : "") << " ["
         << t.label.to_string(q.generator_names) << "] : " << e.label.to_string(q.generator_names) << "\n";
    }
    emit(cfg, os.str(), out);
  }
  return kPass;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (!kSubcommands.count(cfg.subcommand)) throw std::invalid_argument("unknown subcommand \"" + cfg.subcommand + "\"");
  if (!cfg.format.empty() && !kFormats.count(cfg.format))
    throw std::invalid_argument("format must be one of json, dot, svg, text");
  if (cfg.bound == 0) throw std::invalid_argument("--bound must be positive");
  if (cfg.n == 0) throw std::invalid_argument("--n must be positive");
  if (!cfg.inline_json.empty() && !cfg.input_path.empty())
    throw std::invalid_argument("give either --input or --fan, not both");
  if ((cfg.subcommand == "fan-info" || cfg.subcommand == "skeleton") && cfg.inline_json.empty() &&
      cfg.input_path.empty())
    throw std::invalid_argument(cfg.subcommand + " needs --input FILE or --fan JSON");
  if (cfg.subcommand == "verify" && !kChecks.count(cfg.what))
    throw std::invalid_argument("verify needs one of ccc, kappa, chambers, monodromy, generation");
}

std::pair<std::vector<picsym::PicMonomial>, std::vector<std::string>> parse_pic(const std::string& spec,
                                                                               std::size_t n) {
  if (trim(spec).empty()) return {};
  auto parts = split(spec, ',');
  if (parts.size() != n)
    throw std::invalid_argument("--pic needs " + std::to_string(n) + " comma-separated entries, got " +
                                std::to_string(parts.size()));
  static const std::regex ident("[A-Za-z][A-Za-z0-9_]*");
  std::vector<std::string> names;
  for (const auto& p : parts) {
    if (p == "1") continue;
    if (!std::regex_match(p, ident)) throw std::invalid_argument("--pic entry \"" + p + "\" is not a name or 1");
    if (std::find(names.begin(), names.end(), p) == names.end()) names.push_back(p);
  }
  std::vector<picsym::PicMonomial> out;
  for (const auto& p : parts) {
    if (p == "1") {
      out.push_back(picsym::PicMonomial::unit(names.size()));
    } else {
      const auto i = static_cast<std::size_t>(std::find(names.begin(), names.end(), p) - names.begin());
      out.push_back(picsym::PicMonomial::generator(names.size(), i));
    }
  }
  return {out, names};
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::invalid_argument("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::invalid_argument("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::invalid_argument("cannot move output into place at " + path);
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    if (cfg.subcommand == "fan-info") return cmd_fan_info(cfg, out);
    if (cfg.subcommand == "skeleton") return cmd_skeleton(cfg, out);
    if (cfg.subcommand == "hom") return cmd_hom(cfg, out);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out);
    return cmd_quiver(cfg, out);
  } catch (const fans::FanError& e) {
    err << "error: invalid fan: " << e.what() << "\n";
  } catch (const UnsupportedError& e) {
    err << "error: unsupported input: " << e.what() << "\n";
  } catch (const picsym::PicError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const conside::ConsideError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

}  // namespace ccc::cli
