#include "galmod/cli.hpp"

#include <ostream>
#include <sstream>

#include <json.hpp>

#include "galmod/action_file.hpp"
#include "galmod/motive.hpp"

namespace galmod::cli {

namespace {

using nlohmann::ordered_json;

const char kUsage[] =
    R"(usage: galmod <command> [flags]
       galmod dp5|dp6 [<command>] [flags]

commands
  info          group order and subgroup-class count
  h1            H^1 per subgroup class
  coflabby      is H^1(H, M) = 0 for every subgroup class H
  coflasque     build the coflasque resolution and summarize it
  invertible    is M a direct summand of a permutation lattice
  permutation   is M itself a permutation lattice
  motive        zero-dimensional decomposition report
  dp5, dp6      Picard lattice presets; without a command, a full summary

flags
  --input PATH        action file (JSON, schema galmod-action/1)
  --preset dp5|dp6    same as the positional preset form
  --subgroup NAMES    comma-separated generator names selecting a subgroup
                      of a preset group ("none" for the trivial subgroup)
  --format text|json  output format (default text)
  --element-cap N     group closure cap (default 100000)
  --iso-bound B       witness search bound (default 3)
  --assume-zero-cycle assert a zero cycle of degree one

exit codes: 0 success, 1 invalid input, 2 cap exceeded, 3 internal error
)";

struct Options {
  std::string verb;
  std::string preset;
  std::string input;
  std::string format = "text";
  std::size_t element_cap = kDefaultElementCap;
  std::size_t iso_bound = kDefaultIsoBound;
  bool assume_zero_cycle = false;
  std::optional<std::string> subgroup;
};

bool is_verb(const std::string& s) {
  return s == "info" || s == "h1" || s == "coflabby" || s == "coflasque" ||
         s == "invertible" || s == "permutation" || s == "motive";
}

std::size_t parse_count(const std::string& value, const std::string& flag) {
  try {
    long long v = std::stoll(value);
    if (v < 0) throw std::out_of_range("negative");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw InvalidInput("flag " + flag + " needs a nonnegative integer, got '" +
                       value + "'");
  }
}

Options parse_args(const std::vector<std::string>& args) {
  Options opt;
  std::vector<std::string> positional;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto value = [&](const std::string& flag) -> std::string {
      if (i + 1 >= args.size())
        throw InvalidInput("flag " + flag + " needs a value");
      return args[++i];
    };
    if (a == "--input")
      opt.input = value(a);
    else if (a == "--preset")
      opt.preset = value(a);
    else if (a == "--format")
      opt.format = value(a);
    else if (a == "--element-cap")
      opt.element_cap = parse_count(value(a), a);
    else if (a == "--iso-bound")
      opt.iso_bound = parse_count(value(a), a);
    else if (a == "--assume-zero-cycle")
      opt.assume_zero_cycle = true;
    else if (a == "--subgroup")
      opt.subgroup = value(a);
    else if (!a.empty() && a[0] == '-')
      throw InvalidInput("unknown flag '" + a + "'");
    else
      positional.push_back(a);
  }

  for (const std::string& p : positional) {
    if (p == "dp5" || p == "dp6") {
      if (!opt.preset.empty() && opt.preset != p)
        throw InvalidInput("conflicting presets '" + opt.preset + "' and '" +
                           p + "'");
      opt.preset = p;
    } else if (is_verb(p)) {
      if (!opt.verb.empty())
        throw InvalidInput("two commands given: '" + opt.verb + "' and '" + p +
                           "'");
      opt.verb = p;
    } else {
      throw InvalidInput("unknown command '" + p + "'");
    }
  }
  if (!opt.preset.empty() && opt.preset != "dp5" && opt.preset != "dp6")
    throw InvalidInput("unknown preset '" + opt.preset + "'");
  if (opt.format != "text" && opt.format != "json")
    throw InvalidInput("format must be text or json");
  if (!opt.preset.empty() && !opt.input.empty())
    throw InvalidInput("--preset and --input are mutually exclusive");
  if (opt.preset.empty() && opt.input.empty())
    throw InvalidInput("nothing to act on: give --input or a preset");
  if (opt.preset.empty() && opt.verb.empty())
    throw InvalidInput("no command given");
  if (opt.preset.empty() && opt.subgroup)
    throw InvalidInput("--subgroup only applies to presets");
  return opt;
}

struct Context {
  GLattice lattice;              // the working lattice
  int degree = 0;                // 5 or 6 for presets
  GroupPtr weyl;                 // full preset group
  std::optional<Subgroup> selection;  // subgroup of weyl
  std::string selection_desc;
  bool zero_cycle_file = false;
  std::string source_desc;
};

Subgroup parse_subgroup(const GroupPtr& weyl, const std::string& names) {
  if (names.empty() || names == "none") return Subgroup::trivial(weyl);
  std::vector<std::size_t> gens;
  std::stringstream ss(names);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    bool found = false;
    for (std::size_t gi = 0; gi < weyl->generators().size(); ++gi)
      if (weyl->generators()[gi].name == token) {
        gens.push_back(weyl->generator_element(gi));
        found = true;
        break;
      }
    if (!found)
      throw InvalidInput("no generator named '" + token + "' in the preset");
  }
  if (gens.empty()) return Subgroup::trivial(weyl);
  return Subgroup::generated(weyl, gens);
}

Context build_context(const Options& opt) {
  Context ctx;
  if (!opt.input.empty()) {
    ActionFile file = load_action_file(opt.input);
    GroupPtr group =
        FiniteMatrixGroup::enumerate(file.generators, opt.element_cap);
    ctx.lattice = GLattice::defining(group);
    ctx.zero_cycle_file = file.zero_cycle_degree_one;
    ctx.source_desc = "input " + opt.input;
    return ctx;
  }
  ctx.degree = opt.preset == "dp5" ? 5 : 6;
  PicardLattice preset = picard_preset(ctx.degree);
  ctx.weyl = weyl_group(preset);
  ctx.selection = opt.subgroup ? parse_subgroup(ctx.weyl, *opt.subgroup)
                               : Subgroup::full(ctx.weyl);
  ctx.selection_desc =
      !opt.subgroup ? "full"
                    : (ctx.selection->order() == 1 ? "trivial" : *opt.subgroup);
  if (ctx.selection->order() == ctx.weyl->order())
    ctx.lattice = GLattice::defining(ctx.weyl);
  else
    ctx.lattice = restrict_action(GLattice::defining(ctx.weyl), *ctx.selection);
  ctx.source_desc = "preset " + opt.preset;
  return ctx;
}

std::string factors_string(const FiniteAbelianGroup& g) { return g.to_string(); }

ordered_json expression_json(const MotiveExpression& e) {
  return ordered_json::parse(render_structured(e));
}

// ---------------------------------------------------------------------------
// verbs

ordered_json run_info(const Context& ctx, std::ostream& out, bool text) {
  const FiniteMatrixGroup& g = *ctx.lattice.group();
  ordered_json j;
  j["rank"] = ctx.lattice.rank();
  j["group_order"] = g.order();
  j["subgroup_classes"] = g.subgroup_classes().size();
  j["subgroup_count"] = g.subgroup_count();
  ordered_json names = ordered_json::array();
  for (const auto& gen : g.generators()) names.push_back(gen.name);
  j["generators"] = names;
  if (text) {
    out << "rank: " << ctx.lattice.rank() << "\n"
        << "group order: " << g.order() << "\n"
        << "subgroup classes: " << g.subgroup_classes().size() << "\n"
        << "subgroups total: " << g.subgroup_count() << "\n";
  }
  return j;
}

ordered_json run_h1(const Context& ctx, std::ostream& out, bool text) {
  const auto& classes = ctx.lattice.group()->subgroup_classes();
  ordered_json rows = ordered_json::array();
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    FiniteAbelianGroup group = h1(ctx.lattice, classes[ci]);
    ordered_json row;
    row["class"] = ci;
    row["subgroup_order"] = classes[ci].order();
    row["h1"] = factors_string(group);
    ordered_json factors = ordered_json::array();
    for (const Int& d : group.invariant_factors) factors.push_back(d.str());
    row["invariant_factors"] = factors;
    rows.push_back(std::move(row));
    if (text)
      out << "class " << ci << " (order " << classes[ci].order()
          << "): H^1 = " << factors_string(group) << "\n";
  }
  ordered_json j;
  j["classes"] = rows;
  return j;
}

ordered_json run_coflabby(const Context& ctx, std::ostream& out, bool text) {
  CoflabbyReport report = is_coflabby(ctx.lattice);
  ordered_json j;
  j["coflabby"] = report.coflabby;
  j["failing_classes"] = report.failing_classes;
  if (text) {
    out << "coflabby: " << (report.coflabby ? "true" : "false") << "\n";
    for (std::size_t ci : report.failing_classes)
      out << "  nonzero H^1 at subgroup class " << ci << "\n";
  }
  return j;
}

ordered_json resolution_summary(const Resolution& res) {
  const FiniteMatrixGroup& g = *res.p->group();
  const auto& classes = g.subgroup_classes();
  std::map<std::size_t, std::size_t> multiplicity;
  for (std::size_t ci : res.p->descriptor().parts) ++multiplicity[ci];
  ordered_json parts = ordered_json::array();
  for (const auto& [ci, count] : multiplicity) {
    ordered_json part;
    part["class"] = ci;
    part["subgroup_order"] = classes[ci].order();
    part["coset_count"] = g.order() / classes[ci].order();
    part["multiplicity"] = count;
    parts.push_back(std::move(part));
  }
  ordered_json j;
  j["rank_m"] = res.m->rank();
  j["rank_p"] = res.p->rank();
  j["rank_c"] = res.c->rank();
  j["parts"] = parts;
  j["exact"] = true;            // verified at construction
  j["kernel_coflabby"] = true;  // verified at construction
  j["split"] = res.splitting.has_value();
  return j;
}

ordered_json run_coflasque(const Context& ctx, std::ostream& out, bool text) {
  Resolution res = coflasque_resolution(ctx.lattice);
  ordered_json j = resolution_summary(res);
  if (text) {
    out << "resolution 0 -> C -> P -> M -> 0 with ranks " << res.c->rank()
        << " -> " << res.p->rank() << " -> " << res.m->rank() << "\n"
        << "exactness and kernel coflabbiness: verified\n"
        << "parts of P (class, coset count, multiplicity):\n";
    for (const auto& part : j["parts"])
      out << "  class " << part["class"] << ": " << part["coset_count"]
          << " cosets x " << part["multiplicity"] << "\n";
  }
  return j;
}

ordered_json run_invertible(const Context& ctx, std::ostream& out, bool text) {
  InvertibilityVerdict verdict = is_invertible(ctx.lattice);
  ordered_json j;
  j["invertible"] = verdict.invertible;
  if (verdict.invertible) {
    const auto& s = verdict.resolution->splitting->section.matrix;
    j["section_shape"] = {s.rows(), s.cols()};
    j["resolution"] = resolution_summary(*verdict.resolution);
  } else if (verdict.obstruction) {
    j["obstruction"] = verdict.obstruction->to_string();
  }
  if (text) {
    out << "invertible: " << (verdict.invertible ? "true" : "false") << "\n";
    if (verdict.invertible)
      out << "section witness: " << j["section_shape"][0] << " x "
          << j["section_shape"][1] << "\n";
    else if (verdict.obstruction)
      out << "obstruction: " << verdict.obstruction->to_string() << "\n";
  }
  return j;
}

ordered_json run_permutation(const Context& ctx, const Options& opt,
                             std::ostream& out, bool text) {
  PermutationVerdict verdict = is_permutation(ctx.lattice, opt.iso_bound);
  ordered_json j;
  switch (verdict.kind) {
    case PermutationVerdict::Kind::Yes: j["verdict"] = "Yes"; break;
    case PermutationVerdict::Kind::NoCertain: j["verdict"] = "NoCertain"; break;
    case PermutationVerdict::Kind::Unknown: j["verdict"] = "Unknown"; break;
  }
  if (verdict.descriptor) {
    j["parts"] = verdict.descriptor->parts;
    EtaleAlgebraDescriptor e = etale_from_descriptor(*ctx.lattice.group(),
                                                     *verdict.descriptor);
    j["degrees"] = e.degrees;
  }
  if (!verdict.reason.empty()) j["reason"] = verdict.reason;
  if (text) {
    out << "permutation: " << j["verdict"].get<std::string>() << "\n";
    if (verdict.descriptor) {
      out << "descriptor degrees:";
      for (const auto& d : j["degrees"]) out << " " << d;
      out << "\n";
    }
    if (!verdict.reason.empty()) out << "reason: " << verdict.reason << "\n";
  }
  return j;
}

ordered_json report_json(const DecompositionReport& report) {
  ordered_json j;
  j["verdict"] = to_string(report.verdict);
  j["zero_cycle_assumed"] = report.zero_cycle_assumed;
  j["zero_cycle_source"] = report.zero_cycle_source;
  if (report.etale) j["etale_degrees"] = report.etale->degrees;
  if (report.summand) {
    ordered_json s;
    s["left"] = render_text(report.summand->first);
    s["right"] = render_text(report.summand->second);
    s["left_terms"] = expression_json(report.summand->first);
    s["right_terms"] = expression_json(report.summand->second);
    s["relation"] = "left is a direct summand of right";
    j["summand"] = std::move(s);
  }
  if (report.middle) {
    ordered_json rel;
    rel["left"] = render_text(report.middle->lhs);
    rel["right"] = render_text(report.middle->rhs);
    rel["left_terms"] = expression_json(report.middle->lhs);
    rel["right_terms"] = expression_json(report.middle->rhs);
    rel["f_degrees"] = report.middle->f_parts.degrees;
    j["middle_relation"] = std::move(rel);
  }
  if (report.identity) {
    ordered_json rel;
    rel["left"] = render_text(report.identity->first);
    rel["right"] = render_text(report.identity->second);
    rel["left_terms"] = expression_json(report.identity->first);
    rel["right_terms"] = expression_json(report.identity->second);
    j["surface_identity"] = std::move(rel);
  }
  if (!report.complement_note.empty())
    j["complement"] = report.complement_note;
  if (report.section_found)
    j["section_shape"] = {report.section_rows, report.section_cols};
  if (report.obstruction) j["obstruction"] = report.obstruction->to_string();
  return j;
}

void report_text(const DecompositionReport& report, std::ostream& out) {
  out << "verdict: " << to_string(report.verdict) << "\n"
      << "zero cycle of degree one: "
      << (report.zero_cycle_assumed ? "assumed" : "not asserted") << " ("
      << report.zero_cycle_source << ")\n";
  if (report.etale)
    out << "etale algebra E: " << report.etale->name() << "\n";
  if (report.summand)
    out << "summand statement: " << render_text(report.summand->first)
        << "  is a direct summand of  " << render_text(report.summand->second)
        << "\n";
  if (report.middle)
    out << "middle part: " << render_text(report.middle->lhs) << "  ~=  "
        << render_text(report.middle->rhs) << "\n";
  if (report.identity)
    out << "surface identity: " << render_text(report.identity->first)
        << "  ~=  " << render_text(report.identity->second) << "\n";
  if (!report.complement_note.empty())
    out << "complement: " << report.complement_note << "\n";
  if (report.obstruction)
    out << "obstruction: " << report.obstruction->to_string() << "\n";
}

ordered_json run_motive(const Context& ctx, const Options& opt,
                        std::ostream& out, bool text) {
  bool assumed = opt.assume_zero_cycle || ctx.zero_cycle_file;
  std::string source = opt.assume_zero_cycle ? "flag --assume-zero-cycle"
                       : ctx.zero_cycle_file ? "input file"
                                             : "nothing asserted it";
  DecompositionReport report;
  if (ctx.degree == 5) {
    Resolution res = dp5_resolution(*ctx.selection);
    report = decompose_motive(*res.m, assumed, source, &res, opt.iso_bound);
    report.identity = dp5_motive(*ctx.selection);
  } else {
    report = decompose_motive(ctx.lattice, assumed, source, nullptr,
                              opt.iso_bound);
  }
  if (text) report_text(report, out);
  return report_json(report);
}

ordered_json run_summary(const Context& ctx, std::ostream& out, bool text) {
  PicardLattice preset = picard_preset(ctx.degree);
  ordered_json j;
  j["degree"] = ctx.degree;
  j["rank"] = preset.rank;
  j["weyl_order"] = ctx.weyl->order();
  j["roots"] = roots(preset).size();
  j["subgroup"] = ctx.selection_desc;
  j["subgroup_order"] = ctx.selection->order();
  if (text)
    out << "degree " << ctx.degree << " Picard lattice, rank " << preset.rank
        << "\n"
        << "reflection group order: " << ctx.weyl->order() << "\n"
        << "roots: " << roots(preset).size() << "\n"
        << "selected subgroup: " << ctx.selection_desc << " (order "
        << ctx.selection->order() << ")\n";

  if (ctx.degree == 5) {
    Resolution res = dp5_resolution(*ctx.selection);
    j["resolution"] = resolution_summary(res);
    j["kernel_generator"] = "2e + e1 + e2 + e3 + e4 + e5";
    j["retraction"] = "e -> -2, e_i -> 1";
    auto [left, right] = dp5_motive(*ctx.selection);
    j["motive_left"] = render_text(left);
    j["motive_right"] = render_text(right);
    j["motive_left_terms"] = expression_json(left);
    j["motive_right_terms"] = expression_json(right);
    if (text)
      out << "resolution 0 -> Z -> P -> M -> 0: exact, split, kernel "
             "coflabby\n"
          << "kernel generator: 2e + e1 + e2 + e3 + e4 + e5\n"
          << "retraction: e -> -2, e_i -> 1\n"
          << "motive: " << render_text(left) << "  ~=  " << render_text(right)
          << "\n";
  } else {
    InvertibilityVerdict verdict = is_invertible(ctx.lattice);
    j["invertible"] = verdict.invertible;
    if (verdict.invertible)
      j["resolution"] = resolution_summary(*verdict.resolution);
    if (text)
      out << "invertible: " << (verdict.invertible ? "true" : "false") << "\n";
  }
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    if (args.empty() || args[0] == "--help" || args[0] == "help") {
      out << kUsage;
      return args.empty() ? 1 : 0;
    }
    Options opt = parse_args(args);
    Context ctx = build_context(opt);
    const bool text = opt.format == "text";

    std::string verb = opt.verb;
    if (verb.empty()) verb = "summary";

    std::ostringstream text_out;
    ordered_json result;
    if (verb == "info")
      result = run_info(ctx, text_out, text);
    else if (verb == "h1")
      result = run_h1(ctx, text_out, text);
    else if (verb == "coflabby")
      result = run_coflabby(ctx, text_out, text);
    else if (verb == "coflasque")
      result = run_coflasque(ctx, text_out, text);
    else if (verb == "invertible")
      result = run_invertible(ctx, text_out, text);
    else if (verb == "permutation")
      result = run_permutation(ctx, opt, text_out, text);
    else if (verb == "motive")
      result = run_motive(ctx, opt, text_out, text);
    else if (verb == "summary")
      result = run_summary(ctx, text_out, text);
    else
      throw InvalidInput("unknown command '" + verb + "'");

    if (text) {
      out << text_out.str();
    } else {
      ordered_json envelope;
      envelope["schema"] = "galmod-report/1";
      envelope["command"] = verb;
      if (!opt.preset.empty()) {
        envelope["preset"] = opt.preset;
        envelope["subgroup"] = ctx.selection_desc;
      } else {
        envelope["input"] = opt.input;
      }
      envelope["result"] = std::move(result);
      out << envelope.dump(2) << "\n";
    }
    return 0;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InternalInvariant& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace galmod::cli
