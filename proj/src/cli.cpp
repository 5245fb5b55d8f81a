#include "utgrad/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>

#include "utgrad/classify.hpp"
#include "utgrad/error.hpp"
#include "utgrad/gpi.hpp"
#include "utgrad/io.hpp"
#include "utgrad/oracle.hpp"

namespace utgrad {

namespace {

struct Semantic : Error {
  using Error::Error;
};

/// A grading or descriptor file.
struct Loaded {
  std::optional<Grading> grading;
  GradingDescriptor descriptor;
};

Grading read_grading(const std::string& path, const Json& j) {
  try {
    return grading_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Grading read_verified(const std::string& path, const Json& j) {
  Grading g = read_grading(path, j);
  auto rep = verify_grading(g);
  if (!rep.ok) throw Semantic(path + ": not a grading: " + rep.failures.front().describe(g.n()));
  return g;
}

Loaded load(const std::string& path) {
  const Json j = read_json_file(path);
  if (!is_descriptor_json(j)) {
    Grading g = read_verified(path, j);
    return {g, classify(g).descriptor};
  }
  try {
    return {std::nullopt, descriptor_from_json(j)};
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Grading realize(const Loaded& l, const std::optional<FieldSpec>& field, const char* verb) {
  if (l.grading) return *l.grading;
  if (!field) throw InputError(std::string(verb) + ": descriptor input needs --field");
  validate(l.descriptor, field);
  return build(l.descriptor, *field);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_descriptor(std::ostream& out, const GradingDescriptor& d) {
  out << "descriptor: " << d.to_string() << "\n";
  out << "kind: " << kind_name(d.kind) << "\n";
  out << "t: " << to_string(d.t) << "\n";
  if (d.g) out << "g: " << to_string(*d.g) << "\n";
  out << "eta: [";
  for (std::size_t i = 0; i < d.eta.size(); ++i) out << (i ? "," : "") << to_string(d.eta[i]);
  out << "]\n";
}

void print_trace(std::ostream& out, const ClassificationTrace& t, int n) {
  out << "trace:\n";
  if (t.g_main) out << "  main division degree: " << to_string(*t.g_main) << "\n";
  for (const auto& [name, s] : t.subspaces) {
    out << "  subspace " << name << ": dim " << s.dimension() << "\n";
    for (const auto& v : s.basis()) out << "    " << UTMatrix(s.field(), n, v).to_string() << "\n";
  }
  for (const auto& [name, r] : t.shifts) out << "  shift " << name << ": " << r.to_string() << "\n";
  for (const auto& [name, p] : t.conjugators) out << "  conjugator " << name << ": " << p.to_string() << "\n";
  if (t.composed) out << "  composed: " << t.composed->to_string() << "\n";
  if (!t.epsilons.empty()) {
    out << "  epsilons:";
    for (const auto& e : t.epsilons) out << " " << e.to_string();
    out << "\n";
  }
}

/// First automorphism in enumeration order that the search accepts.
std::optional<Automorphism> stream_search(const Grading& a, const Grading& b, bool practical) {
  std::optional<Automorphism> found;
  for_each_automorphism(a.n(), a.field(), [&](const Automorphism& f) {
    const std::vector<Automorphism> one{f};
    found = practical ? practical_isomorphic_search(a, b, one) : graded_isomorphic_search(a, b, one);
    return !found.has_value();
  });
  return found;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group gradings on upper triangular Lie algebras", "utgrad"};
  app.require_subcommand(1);

  std::string field_text;
  std::string out_path;

  auto* construct = app.add_subcommand("construct", "Build the grading of a descriptor");
  std::string descriptor_path;
  construct->add_option("--descriptor", descriptor_path, "Descriptor file")->required();
  construct->add_option("--field", field_text, "F<p>, <p> or Q")->required();
  construct->add_option("-o,--output", out_path, "Output grading file (default: standard output)");

  auto* verify = app.add_subcommand("verify", "Check the grading axioms");
  std::string grading_path;
  verify->add_option("grading", grading_path, "Grading file")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Canonical descriptor of a grading");
  bool trace = false;
  classify_cmd->add_option("grading", grading_path, "Grading file")->required();
  classify_cmd->add_flag("--trace", trace, "Print the classification trace");
  classify_cmd->add_option("-o,--output", out_path, "Write the descriptor file");

  auto* compare = app.add_subcommand("compare", "Decide graded or practical isomorphism");
  std::string first, second;
  bool practical = false, witness = false;
  compare->add_option("first", first, "Grading or descriptor file")->required();
  compare->add_option("second", second, "Grading or descriptor file")->required();
  compare->add_flag("--practical", practical, "Compare central quotients");
  compare->add_flag("--witness", witness, "Search for an automorphism (finite fields)");
  compare->add_option("--field", field_text, "Field for descriptor inputs");

  auto* separate = app.add_subcommand("separate", "Find a graded identity holding in exactly one grading");
  separate->add_option("first", first, "Grading or descriptor file")->required();
  separate->add_option("second", second, "Grading or descriptor file")->required();
  separate->add_option("--field", field_text, "Field for descriptor inputs (default Q)");

  auto* census_cmd = app.add_subcommand("census", "Enumerate and classify all gradings");
  CensusConfig cfg;
  std::string group_text = "2", mode_text = "pruned";
  std::uint32_t p = 2;
  std::string json_path;
  census_cmd->add_option("--n", cfg.n, "Matrix size")->required();
  census_cmd->add_option("--p", p, "Prime")->required();
  census_cmd->add_option("--group", group_text, "Invariant factors, e.g. 2 or 2,2")->capture_default_str();
  census_cmd->add_option("--mode", mode_text, "full, pruned or sampled")->capture_default_str();
  census_cmd->add_option("--budget", cfg.budget, "Search node limit")->capture_default_str();
  census_cmd->add_option("--seed", cfg.seed, "Seed for sampled mode")->capture_default_str();
  census_cmd->add_option("--twists", cfg.twists, "Random automorphisms per class in sampled mode")
      ->capture_default_str();
  census_cmd->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
  census_cmd->add_option("--json", json_path, "Write the machine-readable summary");

  auto* autos = app.add_subcommand("autos", "Automorphisms of UT_n over F_p");
  int an = 2;
  bool count = false;
  std::uint64_t budget = 100'000;
  autos->add_option("--n", an, "Matrix size")->required();
  autos->add_option("--p", p, "Prime")->required();
  autos->add_flag("--count", count, "Print only |Aut|");
  autos->add_option("--budget", budget, "Listing limit")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::optional<FieldSpec> field;
    if (!field_text.empty()) field = parse_field(field_text);

    if (*construct) {
      auto d = [&] {
        const Json j = read_json_file(descriptor_path);
        try {
          return descriptor_from_json(j);
        } catch (const InputError& e) {
          throw InputError(descriptor_path + ": " + e.what());
        }
      }();
      validate(d, field);
      const std::string text = dump(grading_to_json(build(d, *field)));
      if (out_path.empty()) out << text;
      else write_text_file(out_path, text);
      return 0;
    }
    if (*verify) {
      Grading g = read_grading(grading_path, read_json_file(grading_path));
      auto rep = verify_grading(g);
      if (rep.ok) {
        out << "verification: ok\n";
        return 0;
      }
      out << "verification: failed (" << rep.failures.size() << " failures)\n";
      for (const auto& f : rep.failures) out << "  " << f.describe(g.n()) << "\n";
      return 1;
    }
    if (*classify_cmd) {
      Grading g = read_verified(grading_path, read_json_file(grading_path));
      auto c = classify(g);
      print_descriptor(out, c.descriptor);
      out << "branch: " << branch_name(c.trace.branch) << "\n";
      if (trace) print_trace(out, c.trace, g.n());
      if (!out_path.empty()) write_text_file(out_path, dump(descriptor_to_json(c.descriptor)));
      return 0;
    }
    if (*compare) {
      auto a = load(first), b = load(second);
      if (a.grading && b.grading && a.grading->field() != b.grading->field())
        throw MismatchError("the gradings are over different fields");
      if (a.descriptor.n != b.descriptor.n || !(a.descriptor.group == b.descriptor.group))
        throw MismatchError("the inputs differ in n or in the group");
      const bool predicted = practical ? practically_isomorphic(a.descriptor, b.descriptor)
                                       : graded_isomorphic(a.descriptor, b.descriptor);
      out << "first: " << a.descriptor.to_string() << "\n";
      out << "second: " << b.descriptor.to_string() << "\n";
      out << (practical ? "practically isomorphic: " : "graded isomorphic: ") << yes_no(predicted) << "\n";
      if (witness) {
        if (!field && a.grading) field = a.grading->field();
        if (!field && b.grading) field = b.grading->field();
        if (!field || !field->is_finite()) throw InputError("compare: --witness needs a finite field");
        auto ga = realize(a, field, "compare"), gb = realize(b, field, "compare");
        if (ga.field() != gb.field()) throw MismatchError("the inputs are over different fields");
        auto f = stream_search(ga, gb, practical);
        out << "witness: " << (f ? f->to_string() : std::string("none")) << "\n";
        if (f.has_value() != predicted) throw Semantic("automorphism search disagrees with the descriptor predicate");
      }
      return 0;
    }
    if (*separate) {
      auto a = load(first), b = load(second);
      FieldSpec f = field.value_or(a.grading ? a.grading->field() : b.grading ? b.grading->field() : FieldSpec::rational());
      if (a.descriptor.n != b.descriptor.n || !(a.descriptor.group == b.descriptor.group))
        throw MismatchError("the inputs differ in n or in the group");
      auto s = find_separator(a.descriptor, b.descriptor, f);
      if (!s) {
        out << "equivalent\n";
        return 0;
      }
      out << "separator: " << s->polynomial.to_string() << "\n";
      out << "family: " << s->family << "\n";
      out << "direction: " << direction_name(s->direction) << "\n";
      return 0;
    }
    if (*census_cmd) {
      cfg.field = FieldSpec::prime(p);
      cfg.group = AbelianGroup::parse_flag(group_text);
      cfg.mode = parse_mode(mode_text);
      auto r = census(cfg);
      out << r.report();
      if (!json_path.empty()) write_text_file(json_path, dump(census_to_json(r)));
      return r.ok() ? 0 : 1;
    }
    if (*autos) {
      const FieldSpec f = FieldSpec::prime(p);
      if (an < 1) throw InputError("n must be positive");
      if (count) {
        out << automorphism_count(an, f) << "\n";
        return 0;
      }
      for_each_automorphism(
          an, f,
          [&](const Automorphism& a) {
            out << a.to_string() << "\n";
            return true;
          },
          budget);
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const MismatchError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (watermark " << e.watermark() << ")\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace utgrad
