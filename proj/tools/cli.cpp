#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pti/analysis.hpp"
#include "pti/catalog.hpp"
#include "pti/exact_inertia.hpp"
#include "pti/inertia_table.hpp"
#include "pti/matrix_io.hpp"
#include "pti/search.hpp"
#include "pti/states.hpp"
#include "pti/witness.hpp"

namespace pti::cli {
namespace {

// Bad input discovered after option parsing (unreadable file, bad ket, ...).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double default_tol() {
  if (const char* env = std::getenv("PTI_TOL_ZERO")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) throw UsageError(std::string("PTI_TOL_ZERO is not a positive number: ") + env);
    return v;
  }
  return kDefaultTolZero;
}

void diagnostics(std::ostream& err, std::chrono::steady_clock::time_point start) {
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  err << "# diagnostics wall_seconds=" << buf << "\n";
}

MatrixFile load(const std::string& path) {
  try {
    return read_matrix_file(path);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

BipartiteDims dims_of(const MatrixFile& f, const std::vector<std::size_t>& override_dims) {
  if (override_dims.size() == 2) {
    const BipartiteDims d{override_dims[0], override_dims[1]};
    if (d.m == 0 || d.n == 0 || d.total() != f.values.rows()) throw UsageError("--dims do not match the matrix size");
    return d;
  }
  if (!f.bipartite()) throw UsageError("matrix file has no bipartite dims (header m n = 0 0); pass --dims m n");
  return {f.m, f.n};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inertia of partial transposes of bipartite states"};
  app.name("pti");
  app.require_subcommand(1);

  double tol = 0.0;
  bool tol_given = false;
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option_function<double>("--tol", [&](double v) { tol = v; tol_given = true; }, "zero threshold tol_zero")
        ->check(CLI::PositiveNumber);
  };

  // inertia
  auto* c_inertia = app.add_subcommand("inertia", "print 'v- v0 v+' of a Hermitian matrix");
  std::string file;
  bool exact = false, take_pt = false;
  std::vector<std::size_t> dims_opt;
  c_inertia->add_option("--file", file, "matrix file")->required();
  c_inertia->add_flag("--exact", exact, "exact rational elimination instead of eigenvalues");
  c_inertia->add_flag("--pt", take_pt, "take the partial transpose first");
  c_inertia->add_option("--dims", dims_opt, "local dims m n (overrides the header)")->expected(2);
  add_tol(c_inertia);

  // pt
  auto* c_pt = app.add_subcommand("pt", "write the partial transpose of a state file");
  std::string out_file;
  c_pt->add_option("--file", file, "matrix file")->required();
  c_pt->add_option("--dims", dims_opt, "local dims m n")->expected(2);
  c_pt->add_option("--out", out_file, "output file (default: stdout)");

  // schmidt
  auto* c_schmidt = app.add_subcommand("schmidt", "Schmidt decomposition of a ket");
  std::string ket_text;
  c_schmidt->add_option("--ket", ket_text, "ket literal, e.g. \"1|0,0> + 1|1,1>\"")->required();
  c_schmidt->add_option("--dims", dims_opt, "local dims m n")->expected(2)->required();

  // catalog
  auto* c_catalog = app.add_subcommand("catalog", "registry of explicit states");
  c_catalog->require_subcommand(1);
  auto* c_list = c_catalog->add_subcommand("list", "list entries");
  auto* c_verify = c_catalog->add_subcommand("verify", "verify entries");
  std::string id, params_text;
  bool all = false;
  c_verify->add_option("id", id, "entry id");
  c_verify->add_flag("--all", all, "verify every entry with defaults");
  c_verify->add_option("--params", params_text, "overrides, e.g. a=1/2,b=2");
  add_tol(c_verify);
  auto* c_dump = c_catalog->add_subcommand("dump", "write an entry's matrix file");
  c_dump->add_option("id", id, "entry id")->required();
  c_dump->add_option("--params", params_text, "overrides, e.g. a=1/2,b=2");
  c_dump->add_option("--out", out_file, "output file (default: stdout)");

  // table
  auto* c_table = app.add_subcommand("table", "realized / forbidden / open inertias");
  c_table->add_option("--dims", dims_opt, "local dims m n")->expected(2)->required();
  add_tol(c_table);

  // verify-ew
  auto* c_ew = app.add_subcommand("verify-ew", "check the witness conditions");
  bool as_state = false;
  int restarts = 50;
  std::uint64_t seed = 1;
  double ew_tol = kDefaultEwTol;
  c_ew->add_option("--file", file, "matrix file")->required();
  c_ew->add_option("--dims", dims_opt, "local dims m n")->expected(2);
  c_ew->add_flag("--state", as_state, "file holds a state; check its normalized partial transpose");
  c_ew->add_option("--restarts", restarts, "alternating-minimization restarts")->check(CLI::PositiveNumber);
  c_ew->add_option("--seed", seed, "restart seed");
  c_ew->add_option("--ew-tol", ew_tol, "allowed negative product expectation")->check(CLI::NonNegativeNumber);
  add_tol(c_ew);

  // search
  auto* c_search = app.add_subcommand("search", "randomized inertia search");
  std::vector<std::size_t> search_dims{3, 3};
  std::string ranks_text = "3", ensemble_text = "real", alarm_text = "(4,1,4);(3,2,4)", log_file = "pti_search.jsonl";
  std::uint64_t samples = 100000;
  unsigned workers = 1;
  std::size_t kernel_products = 0;
  c_search->add_option("--dims", search_dims, "local dims m n")->expected(2);
  c_search->add_option("--ranks", ranks_text, "comma-separated ranks, cycled over samples");
  c_search->add_option("--ensemble", ensemble_text, "real or complex")->check(CLI::IsMember({"real", "complex"}));
  c_search->add_option("--samples", samples, "number of samples")->check(CLI::PositiveNumber);
  c_search->add_option("--seed", seed, "master seed");
  c_search->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  c_search->add_option("--alarm", alarm_text, "alarm inertias, e.g. \"(4,1,4);(3,2,4)\"");
  c_search->add_option("--log", log_file, "results log (one JSON record per line, appended)");
  c_search->add_option("--kernel-products", kernel_products, "random product vectors forced into ker(rho)");
  add_tol(c_search);

  // replay
  auto* c_replay = app.add_subcommand("replay", "regenerate an alarming state from a search record");
  std::size_t alarm_index = 0;
  long long record_index = -1;
  c_replay->add_option("--log", log_file, "results log")->required();
  c_replay->add_option("--record", record_index, "0-based record line (default: last)");
  c_replay->add_option("--alarm", alarm_index, "alarm index within the record");
  c_replay->add_option("--out", out_file, "write the state matrix here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (!tol_given) tol = default_tol();

    if (c_inertia->parsed()) {
      const MatrixFile f = load(file);
      if (take_pt) {
        const BipartiteDims d = dims_of(f, dims_opt);
        if (exact) {
          out << exact_inertia(partial_transpose(f.exact, d)).to_plain() << "\n";
        } else {
          const InertiaResult r = inertia_of(partial_transpose(f.values, d), tol);
          out << r.inertia.to_plain() << "\n";
          if (r.marginal) err << "warning: marginal spectrum, an eigenvalue lies within 10*tau of zero\n";
        }
      } else if (exact) {
        if (!f.exact.is_hermitian()) throw UsageError("matrix is not exactly Hermitian");
        out << exact_inertia(f.exact).to_plain() << "\n";
      } else {
        const InertiaResult r = inertia_of(f.values, tol);
        out << r.inertia.to_plain() << "\n";
        if (r.marginal) err << "warning: marginal spectrum, an eigenvalue lies within 10*tau of zero\n";
      }
      return kExitOk;
    }

    if (c_pt->parsed()) {
      const MatrixFile f = load(file);
      const BipartiteDims d = dims_of(f, dims_opt);
      const RationalComplexMatrix pt = partial_transpose(f.exact, d);
      if (out_file.empty()) {
        write_matrix(out, pt, d.m, d.n);
      } else {
        std::ofstream o(out_file);
        if (!o) throw UsageError("cannot write '" + out_file + "'");
        write_matrix(o, pt, d.m, d.n);
      }
      return kExitOk;
    }

    if (c_schmidt->parsed()) {
      const BipartiteDims d{dims_opt[0], dims_opt[1]};
      PureState psi;
      try {
        psi = parse_ket(ket_text, d);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const SchmidtDecomposition s = schmidt(psi);
      out << "rank " << s.rank << "\ncoefficients";
      for (double c : s.coefficients) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " %.12g", c);
        out << buf;
      }
      out << "\n";
      return kExitOk;
    }

    if (c_catalog->parsed()) {
      if (c_list->parsed()) {
        for (const CatalogEntry& e : catalog()) {
          out << e.id << "  " << e.dims.to_string();
          if (!e.params.empty()) {
            out << "  params:";
            for (const ParamSpec& p : e.params) out << " " << p.name << "=" << p.default_value.to_string();
          }
          out << "  " << e.description << "\n";
        }
        return kExitOk;
      }
      ParamMap overrides;
      try {
        overrides = parse_params(params_text);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (c_verify->parsed()) {
        if (all == !id.empty()) throw UsageError("catalog verify needs exactly one of <id> or --all");
        if (all && !overrides.empty()) throw UsageError("--params applies to a single entry");
        bool ok = true;
        std::vector<std::string> ids;
        if (all) {
          for (const CatalogEntry& e : catalog()) ids.push_back(e.id);
        } else {
          ids.push_back(id);
        }
        for (const std::string& entry : ids) {
          VerifyResult r;
          try {
            r = verify(entry, overrides, tol);
          } catch (const std::out_of_range& e) {
            throw UsageError(e.what());
          } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
          }
          out << r.record() << "\n";
          ok = ok && r.pass;
        }
        diagnostics(err, start);
        return ok ? kExitOk : kExitFailed;
      }
      if (c_dump->parsed()) {
        Recipe recipe;
        try {
          const CatalogEntry& e = catalog_entry(id);
          recipe = e.build(resolve_params(e, overrides));
        } catch (const std::out_of_range& e) {
          throw UsageError(e.what());
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        if (out_file.empty()) {
          write_matrix(out, recipe.exact(), recipe.dims.m, recipe.dims.n);
        } else {
          std::ofstream o(out_file);
          if (!o) throw UsageError("cannot write '" + out_file + "'");
          write_matrix(o, recipe.exact(), recipe.dims.m, recipe.dims.n);
        }
        return kExitOk;
      }
    }

    if (c_table->parsed()) {
      InertiaSetReport rep;
      try {
        rep = inertia_table({dims_opt[0], dims_opt[1]}, tol);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      out << "dims " << rep.dims.to_string() << "\n";
      out << "realized " << rep.realized.size() << "\n";
      for (const RealizedInertia& r : rep.realized)
        out << "  " << r.inertia.to_plain() << "  " << (r.verified ? "verified" : "UNVERIFIED") << "  " << r.witness << "\n";
      out << "forbidden " << rep.forbidden.size() << "\n";
      for (const ExcludedInertia& r : rep.forbidden) out << "  " << r.inertia.to_plain() << "  " << r.reason << "\n";
      out << "open " << rep.open.size() << "\n";
      for (const ExcludedInertia& r : rep.open) out << "  " << r.inertia.to_plain() << "  " << r.reason << "\n";
      for (const std::string& n : rep.notes) out << "note: " << n << "\n";
      diagnostics(err, start);
      return rep.all_verified() ? kExitOk : kExitFailed;
    }

    if (c_ew->parsed()) {
      const MatrixFile f = load(file);
      const BipartiteDims d = dims_of(f, dims_opt);
      WitnessReport rep;
      if (as_state) {
        try {
          rep = is_witness(BipartiteState::make(d, f.values), ew_tol, restarts, seed, tol);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      } else {
        if (!f.values.is_hermitian()) throw UsageError("matrix is not Hermitian");
        rep = check_witness(f.values, d, ew_tol, restarts, seed, tol);
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6e", rep.product_min.value);
      out << "inertia " << rep.inertia.to_plain() << "\n";
      out << "product_min " << buf << "\n";
      out << "not_psd " << (rep.not_psd ? "yes" : "no") << "\n";
      out << "product_nonnegative " << (rep.product_nonnegative ? "yes" : "no") << "\n";
      out << "result " << (rep.ok() ? "PASS" : "FAIL") << "\n";
      return rep.ok() ? kExitOk : kExitFailed;
    }

    if (c_search->parsed()) {
      SearchConfig cfg;
      try {
        cfg.dims = {search_dims[0], search_dims[1]};
        cfg.rank_set = parse_rank_list(ranks_text);
        cfg.ensemble = parse_ensemble(ensemble_text);
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.workers = workers;
        cfg.tol_zero = tol;
        cfg.kernel_products = kernel_products;
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      std::set<Inertia> alarms;
      try {
        alarms = parse_alarm_set(alarm_text);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const SearchRecord rec = run_search(cfg, alarms);
      std::ofstream log(log_file, std::ios::app);
      if (!log) throw UsageError("cannot append to '" + log_file + "'");
      log << rec.to_json_line() << "\n";
      out << "config_hash " << rec.config_hash << "\n" << format_histogram(rec);
      for (std::size_t k = 0; k < rec.alarms.size(); ++k) {
        const Alarm& a = rec.alarms[k];
        out << "alarm " << k << " inertia " << a.inertia.to_plain() << " sample " << a.sample_index << " seed_path "
            << cfg.seed << "/" << a.sample_index << " rank " << a.rank << "\n";
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3f", rec.wall_seconds);
      err << "# diagnostics wall_seconds=" << buf << " workers=" << cfg.workers << "\n";
      return rec.alarms.empty() ? kExitOk : kExitFailed;
    }

    if (c_replay->parsed()) {
      std::ifstream in(log_file);
      if (!in) throw UsageError("cannot open '" + log_file + "'");
      std::vector<std::string> lines;
      for (std::string line; std::getline(in, line);)
        if (!line.empty()) lines.push_back(line);
      if (lines.empty()) throw UsageError("'" + log_file + "' holds no records");
      const std::size_t which = record_index < 0 ? lines.size() - 1 : static_cast<std::size_t>(record_index);
      if (which >= lines.size()) throw UsageError("record index out of range");
      SearchRecord rec;
      BipartiteState rho;
      try {
        rec = SearchRecord::from_json_line(lines[which]);
        rho = replay(rec, alarm_index);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const Inertia recorded = rec.alarms[alarm_index].inertia;
      const Inertia now = pt_inertia(rho, rec.config.tol_zero).inertia;
      out << "recorded " << recorded.to_plain() << "\nreplayed " << now.to_plain() << "\n";
      if (!out_file.empty()) {
        std::ofstream o(out_file);
        if (!o) throw UsageError("cannot write '" + out_file + "'");
        write_matrix(o, rho.matrix(), rho.dims().m, rho.dims().n);
      }
      return now == recorded ? kExitOk : kExitFailed;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace pti::cli
