#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qsub/qsub.h"

namespace {

struct Failure {
  qsub_status status;
  std::string message;
};

void check(qsub_status s) {
  if (s != QSUB_OK) throw Failure{s, qsub_last_error_message()};
}

struct FilterDel {
  void operator()(qsub_filter* f) const { qsub_filter_free(f); }
};
struct SchemeDel {
  void operator()(qsub_scheme* s) const { qsub_scheme_free(s); }
};
struct GridDel {
  void operator()(qsub_grid* g) const { qsub_grid_free(g); }
};
using FilterPtr = std::unique_ptr<qsub_filter, FilterDel>;
using SchemePtr = std::unique_ptr<qsub_scheme, SchemeDel>;
using GridPtr = std::unique_ptr<qsub_grid, GridDel>;

std::string take(char* s) {
  std::string out(s ? s : "");
  qsub_string_free(s);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{QSUB_ERR_IO, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_string(const std::string& path, const std::string& text) {
  check(qsub_write_file(path.c_str(), reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

FilterPtr load(const std::string& path) {
  qsub_filter* f = nullptr;
  check(qsub_filter_load(path.c_str(), &f));
  return FilterPtr(f);
}

SchemePtr load_scheme(const std::string& list, int M) {
  std::vector<FilterPtr> owned;
  std::vector<const qsub_filter*> raw;
  for (const auto& p : split(list, ',')) {
    owned.push_back(load(p));
    raw.push_back(owned.back().get());
  }
  if (raw.empty()) throw Failure{QSUB_ERR_INVALID_ARGUMENT, "no mask files given"};
  qsub_scheme* s = nullptr;
  check(qsub_scheme_create(raw.data(), raw.size(), M, &s));
  return SchemePtr(s);
}

void write_masks(const qsub_scheme* s, const std::vector<std::string>& paths) {
  int r = 0;
  check(qsub_scheme_period(s, &r));
  if (static_cast<int>(paths.size()) != r)
    throw Failure{QSUB_ERR_INVALID_ARGUMENT, "expected " + std::to_string(r) + " output paths"};
  for (int l = 0; l < r; ++l) {
    qsub_filter* f = nullptr;
    check(qsub_scheme_mask(s, l, &f));
    FilterPtr owned(f);
    check(qsub_filter_save(f, paths[static_cast<std::size_t>(l)].c_str()));
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_string(path, text);
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  CLI::App app{"Quasi-stationary subdivision: analysis, construction and cascade sampling"};
  app.require_subcommand(1);

  // subdivide
  auto* sub = app.add_subcommand("subdivide", "Apply the scheme to a control net");
  std::string sub_masks, sub_input, sub_out;
  int sub_M = 2, sub_levels = 1;
  sub->add_option("--masks", sub_masks, "Comma separated mask files a1,...,ar")->required();
  sub->add_option("--dilation", sub_M, "Dilation factor M");
  sub->add_option("--levels", sub_levels, "Number of refinement steps");
  sub->add_option("--input", sub_input, "Control net CSV (k1,...,kd,value); default delta");
  sub->add_option("--out", sub_out, "Output CSV (default stdout)");

  // analyze
  auto* an = app.add_subcommand("analyze", "Sum rules, interpolation, symmetry and sm2 of one mask");
  std::string an_mask, an_sym, an_center;
  int an_M = 2, an_max = -1;
  an->add_option("--mask", an_mask, "Mask file")->required();
  an->add_option("--dilation", an_M, "Dilation factor M");
  an->add_option("--max-sr", an_max, "Cap on the sum rule search");
  an->add_option("--symmetry", an_sym, "Group to check: d4, d6 or point")->check(CLI::IsMember({"d4", "d6", "point"}));
  an->add_option("--center", an_center, "Symmetry center h1,...,hd in (1/2)Z^d");

  // certify
  auto* ce = app.add_subcommand("certify", "Certify C^m convergence of a quasi-stationary scheme");
  std::string ce_masks;
  int ce_M = 2, ce_order = 1, ce_level = 1;
  ce->add_option("--masks", ce_masks, "Comma separated mask files")->required();
  ce->add_option("--dilation", ce_M, "Dilation factor M");
  ce->add_option("--order", ce_order, "Smoothness order m");
  ce->add_option("--level", ce_level, "Level n of the coset-sum bound");

  // construct
  auto* co = app.add_subcommand("construct", "Solve a symmetric mask family for an interpolatory scheme");
  std::string co_family, co_family_file, co_out;
  std::vector<std::string> co_fix, co_start;
  auto* fam_opt = co->add_option("--family", co_family, "Built-in family: d4-ring1, d6-ring1, d4-ring2, d6-ring2");
  auto* famf_opt = co->add_option("--family-file", co_family_file, "Family description file");
  fam_opt->excludes(famf_opt);
  co->add_option("--fix", co_fix, "name=expr, expr affine in new variables")->allow_extra_args(false);
  co->add_option("--start", co_start, "name=value starting guesses")->allow_extra_args(false);
  co->add_option("--out", co_out, "Comma separated output mask files");

  // verify-example
  auto* ve = app.add_subcommand("verify-example", "Regenerate a reference example and check its published values");
  std::string ve_id, ve_dir;
  bool ve_json = false;
  ve->add_option("id", ve_id, "ex3, ex1, ex4a, ex4b, ex2a or ex2b")->required();
  ve->add_option("--out-dir", ve_dir, "Directory for the regenerated masks (default: current)");
  ve->add_flag("--json", ve_json, "Print the full JSON report");

  // cascade
  auto* ca = app.add_subcommand("cascade", "Sample the limit function or a derivative on M^-n Z^d");
  std::string ca_masks, ca_deriv, ca_csv, ca_pgm, ca_norm = "minmax", ca_input;
  int ca_M = 2, ca_levels = 6, ca_conv = -1;
  ca->add_option("--masks", ca_masks, "Comma separated mask files")->required();
  ca->add_option("--dilation", ca_M, "Dilation factor M");
  ca->add_option("--levels", ca_levels, "Level n >= 1");
  ca->add_option("--deriv", ca_deriv, "Derivative order mu as comma list (default zeros)");
  ca->add_option("--csv", ca_csv, "CSV output path");
  ca->add_option("--pgm", ca_pgm, "16-bit PGM output path (2D only)");
  ca->add_option("--normalize", ca_norm, "minmax or symmetric")->check(CLI::IsMember({"minmax", "symmetric"}));
  ca->add_option("--input", ca_input, "Control net CSV instead of delta");
  ca->add_option("--convergence", ca_conv, "Print convergence residuals for |mu| <= m against level --levels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sub) {
      SchemePtr s = load_scheme(sub_masks, sub_M);
      qsub_filter* m0 = nullptr;
      check(qsub_scheme_mask(s.get(), 0, &m0));
      FilterPtr first(m0);
      int dim = 0;
      qsub_backend b = QSUB_RATIONAL;
      check(qsub_filter_dim(m0, &dim));
      check(qsub_filter_backend(m0, &b));
      qsub_filter* v = nullptr;
      if (sub_input.empty())
        check(qsub_filter_delta(dim, b, &v));
      else
        check(qsub_control_net_parse(read_file(sub_input).c_str(), b, &v));
      FilterPtr vin(v);
      qsub_filter* w = nullptr;
      check(qsub_scheme_subdivide(s.get(), sub_levels, v, &w));
      FilterPtr wout(w);
      char* text = nullptr;
      check(qsub_control_net_format(w, &text));
      emit(take(text), sub_out);
    } else if (*an) {
      FilterPtr a = load(an_mask);
      char* text = nullptr;
      check(qsub_analyze_json(a.get(), an_M, an_max, an_sym.empty() ? nullptr : an_sym.c_str(),
                              an_center.empty() ? nullptr : an_center.c_str(), &text));
      std::cout << take(text);
    } else if (*ce) {
      SchemePtr s = load_scheme(ce_masks, ce_M);
      char* text = nullptr;
      check(qsub_certify_json(s.get(), ce_order, ce_level, &text));
      std::cout << take(text);
    } else if (*co) {
      if (co_family.empty() == co_family_file.empty())
        throw Failure{QSUB_ERR_INVALID_ARGUMENT, "give one of --family and --family-file"};
      std::string fam_text = co_family_file.empty() ? "" : read_file(co_family_file);
      std::vector<const char*> fixes, starts;
      for (const auto& f : co_fix) fixes.push_back(f.c_str());
      for (const auto& f : co_start) starts.push_back(f.c_str());
      char* text = nullptr;
      qsub_scheme* s = nullptr;
      check(qsub_construct(co_family.empty() ? nullptr : co_family.c_str(),
                           co_family_file.empty() ? nullptr : fam_text.c_str(), fixes.data(), fixes.size(),
                           starts.data(), starts.size(), &text, &s));
      SchemePtr owned(s);
      std::cout << take(text);
      if (!co_out.empty()) write_masks(s, split(co_out, ','));
    } else if (*ve) {
      char* text = nullptr;
      qsub_scheme* s = nullptr;
      check(qsub_verify_example(ve_id.c_str(), &text, &s));
      SchemePtr owned(s);
      std::string js = take(text);
      auto j = nlohmann::json::parse(js);
      int r = 0;
      check(qsub_scheme_period(s, &r));
      std::vector<std::string> paths;
      std::string dir = ve_dir.empty() ? "." : ve_dir;
      for (int l = 1; l <= r; ++l) paths.push_back(dir + "/" + ve_id + "_a" + std::to_string(l) + ".flt");
      write_masks(s, paths);
      if (ve_json) {
        std::cout << js;
      } else {
        std::printf("%-6s %-44s %-22s %-22s %s\n", "result", "check", "observed", "expected", "tolerance");
        auto row = [](const nlohmann::json& c, const char* tag) {
          std::printf("%-6s %-44s %-22.10g %-22.10g %.3g\n", tag, c["name"].get<std::string>().c_str(),
                      c["observed"].is_number() ? c["observed"].get<double>() : 0.0,
                      c["expected"].is_number() ? c["expected"].get<double>() : 0.0,
                      c["tolerance"].is_number() ? c["tolerance"].get<double>() : 0.0);
        };
        for (const auto& c : j["checks"]) row(c, c["passed"].get<bool>() ? "PASS" : "FAIL");
        for (const auto& c : j["findings"]) row(c, c["passed"].get<bool>() ? "same" : "DIFF");
        std::printf("%s: %s (masks written to %s)\n", ve_id.c_str(), j["passed"].get<bool>() ? "PASS" : "FAIL",
                    dir.c_str());
      }
      if (!j["passed"].get<bool>()) return 3;
    } else if (*ca) {
      SchemePtr s = load_scheme(ca_masks, ca_M);
      qsub_filter* m0 = nullptr;
      check(qsub_scheme_mask(s.get(), 0, &m0));
      FilterPtr first(m0);
      int dim = 0;
      qsub_backend b = QSUB_RATIONAL;
      check(qsub_filter_dim(m0, &dim));
      check(qsub_filter_backend(m0, &b));
      std::vector<int> mu(static_cast<std::size_t>(dim), 0);
      if (!ca_deriv.empty()) {
        auto parts = split(ca_deriv, ',');
        if (static_cast<int>(parts.size()) != dim)
          throw Failure{QSUB_ERR_INVALID_DIMENSION, "--deriv needs " + std::to_string(dim) + " entries"};
        for (std::size_t i = 0; i < parts.size(); ++i) {
          try {
            mu[i] = std::stoi(parts[i]);
          } catch (const std::exception&) {
            throw Failure{QSUB_ERR_INVALID_ARGUMENT, "bad derivative order '" + parts[i] + "'"};
          }
          if (mu[i] < 0) throw Failure{QSUB_ERR_INVALID_ARGUMENT, "derivative orders must be >= 0"};
        }
      }
      FilterPtr vin;
      if (!ca_input.empty()) {
        qsub_filter* v = nullptr;
        check(qsub_control_net_parse(read_file(ca_input).c_str(), b, &v));
        vin.reset(v);
      }
      qsub_grid* g = nullptr;
      check(qsub_cascade(s.get(), ca_levels, mu.data(), vin.get(), &g));
      GridPtr grid(g);
      std::size_t n = 0;
      check(qsub_grid_size(g, &n));
      if (!ca_csv.empty()) {
        char* text = nullptr;
        check(qsub_grid_csv(g, &text));
        emit(take(text), ca_csv);
      }
      if (!ca_pgm.empty()) {
        unsigned char* data = nullptr;
        std::size_t len = 0;
        check(qsub_grid_pgm(g, ca_norm == "symmetric" ? QSUB_NORMALIZE_SYMMETRIC : QSUB_NORMALIZE_MINMAX, &data, &len));
        qsub_status st = qsub_write_file(ca_pgm.c_str(), data, len);
        qsub_buffer_free(data);
        check(st);
      }
      if (ca_conv >= 0) {
        char* text = nullptr;
        check(qsub_convergence_json(s.get(), ca_conv, ca_levels, &text));
        std::cout << take(text);
      } else if (ca_csv != "-") {
        std::cerr << "level " << ca_levels << ": " << n << " samples\n";
      }
    }
  } catch (const Failure& f) {
    std::cerr << "qsub: " << qsub_status_name(f.status) << ": " << f.message << "\n";
    return qsub_status_is_numerical(f.status) ? 3 : 2;
  }
  return 0;
}
