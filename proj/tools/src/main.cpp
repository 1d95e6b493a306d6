#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "analyses.hpp"
#include "json.hpp"
#include "jsonwriter.hpp"
#include "runconfig.hpp"
#include "varleb/catalog.hpp"
#include "varleb/errors.hpp"
#include "varleb/selftest.hpp"

namespace fs = std::filesystem;

namespace {

int do_run(const std::string& config_path, const std::string& out_dir,
           int threads) {
  std::ifstream in(config_path);
  if (!in)
    throw varleb::config_error("cannot open config file " + config_path);
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw varleb::config_error(std::string("config is not valid JSON: ") +
                               e.what());
  }

  varleb::Constants base;
  base.threads = threads;

  std::ostringstream report, csv;
  varleb_cli::RunSetup s;
  bool ok = false;
  try {
    s = varleb_cli::build_run(cfg, base);

    varleb_cli::JsonWriter jw(report);
    jw.begin_object();
    jw.kv("tool", "varleb");

    jw.key("domain");
    jw.begin_object();
    jw.kv("dim", s.lat.dim);
    jw.kv("halfwidth", s.lat.halfwidth);
    jw.kv("points_per_axis", s.lat.points_per_axis);
    jw.kv("spacing", s.lat.spacing());
    jw.end_object();

    jw.key("exponent");
    jw.begin_object();
    jw.kv("p_minus", s.profile.p_minus);
    jw.kv("p_plus", s.profile.p_plus);
    jw.kv("p_infty", s.profile.p_infty);
    jw.kv("p_infty_estimated", s.profile.p_infty_estimated);
    jw.kv("c0", s.profile.c0);
    jw.kv("c_infty", s.profile.c_infty);
    jw.end_object();

    jw.key("weight");
    jw.begin_object();
    jw.kv("kind", s.is_matrix ? "matrix" : "scalar");
    jw.kv("m", s.wmat.m);
    jw.kv("label", s.weight_label);
    jw.end_object();

    jw.key("family");
    jw.begin_object();
    jw.kv("j_min", s.fam.j_min);
    jw.kv("j_max", s.fam.j_max);
    jw.kv("translates", s.fam.translates);
    jw.kv("cubes", long(s.fam.cubes.size()));
    jw.kv("skipped", s.fam.skipped);
    jw.end_object();

    ok = varleb_cli::run_analyses(s, varleb_cli::need(cfg, "analyses",
                                                      "config"),
                                  jw, csv);
    jw.kv("all_checks_pass", ok);
    jw.end_object();
    report << "\n";
  } catch (const nlohmann::json::exception& e) {
    // wrong JSON types surface as config problems, not crashes
    throw varleb::config_error(std::string("bad config value: ") + e.what());
  }

  fs::create_directories(out_dir);
  const fs::path report_path = fs::path(out_dir) / s.report_name;
  const fs::path csv_path = fs::path(out_dir) / s.csv_name;
  std::ofstream rf(report_path);
  rf << report.str();
  std::ofstream cf(csv_path);
  cf << csv.str();
  if (!rf || !cf)
    throw varleb::config_error("cannot write outputs under " + out_dir);

  std::cout << "wrote " << report_path.string() << " and "
            << csv_path.string()
            << (ok ? "" : " (some checks failed)") << "\n";
  return ok ? 0 : 1;
}

void print_catalog() {
  auto flag = [](std::optional<bool> f) {
    return !f.has_value() ? '.' : (*f ? '+' : '-');
  };
  std::cout << std::left << std::setw(18) << "name" << std::setw(5) << "dim"
            << std::setw(4) << "m" << std::setw(11) << "halfwidth"
            << "ainf apvar apinf  note\n";
  for (const varleb::CatalogEntry& e : varleb::catalog_entries()) {
    std::cout << std::left << std::setw(18) << e.name << std::setw(5) << e.dim
              << std::setw(4) << e.m << std::setw(11) << e.halfwidth << "   "
              << flag(e.in_ainfty) << "     " << flag(e.in_apvar) << "     "
              << flag(e.in_apinfty) << "   " << e.note << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grid functionals for variable-exponent weighted norms"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads, 0 means one per core");

  std::string config_path;
  std::string out_dir = ".";
  CLI::App* run =
      app.add_subcommand("run", "evaluate the analyses in a JSON config");
  run->add_option("config", config_path, "path to the run configuration")
      ->required();
  run->add_option("--out", out_dir,
                  "directory for the report and cube CSV");

  bool list_only = false;
  CLI::App* self =
      app.add_subcommand("selftest", "run the built-in acceptance checks");
  self->add_flag("--list", list_only, "print the check names without running");

  CLI::App* cat = app.add_subcommand("catalog", "named weight families");
  cat->require_subcommand(1);
  cat->add_subcommand("list", "print every catalog entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are config problems
  }

  try {
    if (run->parsed()) return do_run(config_path, out_dir, threads);
    if (self->parsed()) {
      if (list_only) {
        for (const std::string& label : varleb::acceptance_labels())
          std::cout << label << "\n";
        return 0;
      }
      varleb::Constants cst;
      cst.threads = threads;
      return varleb::all_passed(varleb::run_acceptance(std::cout, cst)) ? 0
                                                                        : 1;
    }
    print_catalog();
    return 0;
  } catch (const varleb::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const varleb::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
}
