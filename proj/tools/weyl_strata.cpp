// Command-line frontend: computes the Jordan-class / sheet / stratum
// decomposition of a reductive group of the given type, verifies the
// structural properties behind it, and prints exact Weyl character tables.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "errors.hpp"
#include "json.hpp"
#include "repops.hpp"
#include "strata.hpp"
#include "unipotent.hpp"

namespace {

struct Options {
  std::string type;
  int total_rank = -1;
  long long characteristic = 0;
  long long order_cap = 50000;
  int rank_cap = 5;
  std::string format = "json";
  std::string out;
};

void write_output(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(opt.out);
  if (!f) throw config_error("cannot open output path " + opt.out);
  f << text << "\n";
}

int cmd_compute(const Options& opt) {
  strata::GroupSpec spec =
      strata::GroupSpec::parse(opt.type, opt.total_rank, opt.characteristic,
                               opt.order_cap, opt.rank_cap);
  strata::Context ctx = strata::build_context(spec);
  strata::Decomposition d = strata::decompose(ctx);
  write_output(opt, opt.format == "markdown" ? strata::report_markdown(d)
                                             : strata::report_json(d));
  if (!d.report.ok()) {
    std::cerr << "theorem verification failed:\n";
    for (auto& v : d.report.violations) std::cerr << "  " << v << "\n";
    return 3;
  }
  return 0;
}

int cmd_verify(const Options& opt) {
  strata::GroupSpec spec =
      strata::GroupSpec::parse(opt.type, opt.total_rank, opt.characteristic,
                               opt.order_cap, opt.rank_cap);
  int failures = 0;
  auto check = [&](const std::string& name, auto&& fn) {
    try {
      std::vector<std::string> vs = fn();
      if (vs.empty()) {
        std::cout << "PASS " << name << "\n";
      } else {
        ++failures;
        std::cout << "FAIL " << name << "\n";
        for (auto& v : vs) std::cout << "  " << v << "\n";
      }
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "FAIL " << name << "\n  " << e.what() << "\n";
    }
  };

  // Table construction is self-validating (orthogonality, Poincare identity).
  check("character-table", [&]() -> std::vector<std::string> {
    repops::weyl_data(spec.type, spec.order_cap);
    return {};
  });

  strata::Context* ctx = nullptr;
  strata::Context ctx_storage;
  check("pseudo-levi-enumeration", [&]() -> std::vector<std::string> {
    ctx_storage = strata::build_context(spec);
    ctx = &ctx_storage;
    return {};
  });
  if (!ctx) {
    std::cout << "verify: " << failures << " failing check(s)\n";
    return 1;
  }

  check("springer-tables", [&]() -> std::vector<std::string> {
    for (auto& L : ctx->levis)
      for (auto* t : L.factor_tables) unipotent::validate_table(*t);
    return {};
  });

  check("induction-compatibility", [&]() -> std::vector<std::string> {
    return strata::verify_induction_compatibility(*ctx);
  });

  check("theorem", [&]() -> std::vector<std::string> {
    strata::TheoremReport rep = strata::verify_theorem(*ctx);
    return rep.violations;
  });

  if (failures) {
    std::cout << "verify: " << failures << " failing check(s)\n";
    return 1;
  }
  std::cout << "verify: all checks passed\n";
  return 0;
}

int cmd_chartab(const Options& opt) {
  strata::GroupSpec spec =
      strata::GroupSpec::parse(opt.type, opt.total_rank, opt.characteristic,
                               opt.order_cap, opt.rank_cap);
  const weylgrp::WeylData& wd = repops::weyl_data(spec.type, spec.order_cap);
  if (opt.format == "markdown") {
    std::ostringstream os;
    os << "# Character table of W(" << wd.type.str() << "), order "
       << wd.W.order() << "\n\n";
    os << "| label | dim | b | values |\n|---|---|---|---|\n";
    for (int i = 0; i < wd.table.n_chars(); ++i) {
      os << "| " << wd.table.labels[i] << " | " << wd.table.dims[i] << " | "
         << wd.table.b[i] << " |";
      for (int c = 0; c < wd.cc.num; ++c) os << " " << wd.table.values[i][c];
      os << " |\n";
    }
    write_output(opt, os.str());
  } else {
    write_output(opt, weylgrp::char_table_json(wd));
  }
  return 0;
}

int cmd_gen_data(const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto dump_table = [&](const unipotent::UnipotentTable& t) {
    nlohmann::ordered_json j;
    j["family"] = std::string(1, (char)t.family);
    j["rank"] = t.rank;
    j["provenance"] = t.provenance;
    j["validated"] = "b-identity, injectivity, anchors (suite v1)";
    nlohmann::ordered_json cls = nlohmann::ordered_json::array();
    for (auto& c : t.classes) {
      nlohmann::ordered_json cj;
      cj["label"] = c.label;
      if (c.very_even) cj["very_even"] = c.very_even == 1 ? "I" : "II";
      cj["dim"] = c.dim;
      cj["springer"] = c.springer;
      cls.push_back(cj);
    }
    j["classes"] = cls;
    std::string fname = out_dir + "/springer_" +
                        std::string(1, (char)std::tolower((char)t.family)) +
                        std::to_string(t.rank) + ".json";
    std::ofstream f(fname);
    f << j.dump(2) << "\n";
    std::cout << "wrote " << fname << "\n";
  };
  using wmath::Family;
  for (int r = 2; r <= 5; ++r) {
    auto t = unipotent::generate_table(Family::B, r);
    unipotent::validate_table(t);
    dump_table(t);
  }
  for (int r = 2; r <= 5; ++r) {
    auto t = unipotent::generate_table(Family::C, r);
    unipotent::validate_table(t);
    dump_table(t);
  }
  for (int r = 4; r <= 5; ++r) {
    auto t = unipotent::generate_table(Family::D, r);
    unipotent::validate_table(t);
    dump_table(t);
  }
  // G2: five classes, labels and dimensions fixed; the Springer labels are
  // resolved semantically against the computed character table
  {
    const weylgrp::WeylData& wd =
        repops::weyl_data(rootsys::CartanType::simple(Family::G, 2));
    auto label_of = [&](auto pred) {
      for (int i = 0; i < wd.table.n_chars(); ++i)
        if (pred(i)) return wd.table.labels[i];
      throw integrity_error("G2 character not found");
    };
    wmath::IVec a1(2, 0), a2(2, 0);
    a1[0] = 1;
    a2[1] = 1;
    bool a1_short = wd.rs.norm(a1) < wd.rs.norm(a2);
    const wmath::IVec& srt = a1_short ? a1 : a2;
    const wmath::IVec& lng = a1_short ? a2 : a1;
    int short_cls = wd.cc.class_of[wd.W.index_of(wd.rs.reflection_matrix(srt))];
    int long_cls = wd.cc.class_of[wd.W.index_of(wd.rs.reflection_matrix(lng))];
    unipotent::UnipotentTable t;
    t.family = Family::G;
    t.rank = 2;
    t.provenance =
        "curated: dimensions are the five G2 class dimensions; Springer "
        "labels pinned by b-identity, the regular/subregular/trivial anchors, "
        "and the short-reflection sign rule for the minimal class (derived "
        "from the type B2/C2 symbol computation)";
    auto add = [&](const std::string& label, wmath::i64 dim,
                   const std::string& springer) {
      t.classes.push_back({label, {}, 0, dim, springer});
    };
    add("G2", 12, wd.table.labels[wd.table.trivial]);
    add("G2(a1)", 10, label_of([&](int i) { return wd.table.b[i] == 1; }));
    add("~A1", 8, label_of([&](int i) { return wd.table.b[i] == 2; }));
    add("A1", 6, label_of([&](int i) {
          return wd.table.dims[i] == 1 && wd.table.b[i] == 3 &&
                 wd.table.values[i][short_cls] == -1 &&
                 wd.table.values[i][long_cls] == 1;
        }));
    add("1", 0, wd.table.labels[wd.table.sign]);
    unipotent::validate_table(t);
    dump_table(t);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jordan classes, sheets and Lusztig strata of reductive groups"};
  app.require_subcommand(1);

  Options opt;
  std::string gen_out = "data";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--type", opt.type, "Cartan type, e.g. C2, A3, G2, A1xA1")
        ->required();
    sub->add_option("--total-rank", opt.total_rank,
                    "total rank (default: semisimple rank)");
    sub->add_option("--char", opt.characteristic, "characteristic: 0 or a prime");
    sub->add_option("--order-cap", opt.order_cap, "Weyl group order cap");
    sub->add_option("--format", opt.format, "json or markdown")
        ->check(CLI::IsMember({"json", "markdown"}));
    sub->add_option("--out", opt.out, "output path (default: stdout)");
  };

  CLI::App* compute = app.add_subcommand("compute", "compute the decomposition");
  add_common(compute);
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  add_common(verify);
  CLI::App* chartab = app.add_subcommand("chartab", "print the character table");
  add_common(chartab);
  CLI::App* gen = app.add_subcommand("gen-data", "regenerate the Springer data files");
  gen->add_option("--out", gen_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (compute->parsed()) return cmd_compute(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (chartab->parsed()) return cmd_chartab(opt);
    if (gen->parsed()) return cmd_gen_data(gen_out);
  } catch (const config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const invalid_input& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const integrity_error& e) {
    std::cerr << "integrity error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
