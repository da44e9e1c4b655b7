#include "ranktwo/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ranktwo/meixner.hpp"
#include "ranktwo/randomized.hpp"
#include "ranktwo/rank_two.hpp"
#include "ranktwo/singular_values.hpp"

namespace ranktwo {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Grid {
  double lo = 0, hi = 0;
  int count = 1;
  bool log = false;

  std::vector<double> points() const {
    std::vector<double> p;
    if (count <= 1) {
      p.push_back(lo);
      return p;
    }
    for (int i = 0; i < count; ++i) {
      double f = static_cast<double>(i) / (count - 1);
      p.push_back(log ? std::pow(10.0, std::log10(lo) + f * (std::log10(hi) - std::log10(lo)))
                      : lo + f * (hi - lo));
    }
    return p;
  }
};

// "lo:hi:count" or a single value.
Grid parse_grid(const std::string& text, bool log) {
  Grid g;
  g.log = log;
  std::stringstream ss(text);
  std::string part;
  std::vector<double> vals;
  while (std::getline(ss, part, ':')) vals.push_back(std::stod(part));
  if (vals.empty()) throw CLI::ValidationError("empty grid expression");
  if (vals.size() == 1) {
    g.lo = g.hi = vals[0];
    g.count = 1;
  } else if (vals.size() == 3) {
    g.lo = vals[0];
    g.hi = vals[1];
    g.count = static_cast<int>(vals[2]);
    if (g.count < 1 || !std::isfinite(g.lo) || !std::isfinite(g.hi))
      throw CLI::ValidationError("bad grid bounds");
  } else {
    throw CLI::ValidationError("grid must be 'value' or 'lo:hi:count'");
  }
  return g;
}

CVector parse_inline_vector(const std::string& text) {
  CVector v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(Complex(std::stod(part), 0));
  return v;
}

CVector json_vector(const json& jv) {
  CVector v;
  if (jv.is_array()) {
    for (const auto& e : jv) v.push_back(Complex(e.get<double>(), 0));
    return v;
  }
  const auto& re = jv.at("re");
  std::vector<double> im(re.size(), 0.0);
  if (jv.contains("im")) im = jv.at("im").get<std::vector<double>>();
  for (std::size_t i = 0; i < re.size(); ++i)
    v.push_back(Complex(re[i].get<double>(), im[i]));
  return v;
}

CMatrix json_matrix(const json& jm) {
  auto fill = [](const json& rows, const json* imrows) {
    std::size_t r = rows.size(), c = rows.at(0).size();
    CMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = Complex(rows[i][j].get<double>(),
                          imrows ? (*imrows)[i][j].get<double>() : 0.0);
    return m;
  };
  if (jm.is_array()) return fill(jm, nullptr);
  const json& re = jm.at("re");
  if (jm.contains("im")) {
    const json& im = jm.at("im");
    return fill(re, &im);
  }
  return fill(re, nullptr);
}

CMatrix csv_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CLI::ValidationError("empty CSV matrix");
  CMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw CLI::ValidationError("ragged CSV matrix");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

struct InputData {
  CMatrix a;
  CVector u, v, w, g, h;
  bool has_u = false, has_v = false, has_w = false, has_g = false, has_h = false;
};

InputData load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open input file: " + path);
  InputData d;
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    json j = json::parse(in);
    const char* mkey = j.contains("A") ? "A" : (j.contains("B") ? "B" : nullptr);
    if (!mkey) throw CLI::ValidationError("input needs a matrix under 'A' or 'B'");
    d.a = json_matrix(j.at(mkey));
    auto grab = [&](const char* key, CVector& dst, bool& flag) {
      if (j.contains(key)) {
        dst = json_vector(j.at(key));
        flag = true;
      }
    };
    grab("u", d.u, d.has_u);
    grab("v", d.v, d.has_v);
    grab("w", d.w, d.has_w);
    grab("g", d.g, d.has_g);
    grab("h", d.h, d.has_h);
  } else {
    d.a = csv_matrix(in);
  }
  return d;
}

// Writer for the two output formats; CSV carries the config echo and any
// summary lines as '#' comments.
class Emitter {
 public:
  Emitter(std::string out_path, bool as_json, json config)
      : path_(std::move(out_path)), json_(as_json), config_(std::move(config)) {}

  void comment(const std::string& text) {
    if (json_)
      notes_.push_back(text);
    else
      body_ += "# " + text + "\n";
  }
  void header(const std::vector<std::string>& cols) {
    cols_ = cols;
    if (!json_) {
      std::string line;
      for (std::size_t i = 0; i < cols.size(); ++i)
        line += (i ? "," : "") + cols[i];
      body_ += line + "\n";
    }
  }
  void row(const std::vector<std::string>& cells) {
    if (json_) {
      json r = json::object();
      for (std::size_t i = 0; i < cells.size() && i < cols_.size(); ++i)
        r[cols_[i]] = cells[i];
      rows_.push_back(std::move(r));
    } else {
      std::string line;
      for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
      body_ += line + "\n";
    }
  }

  void finish() {
    std::string text;
    if (json_) {
      json doc;
      doc["config"] = config_;
      if (!notes_.empty()) doc["notes"] = notes_;
      doc["rows"] = rows_;
      text = doc.dump(2) + "\n";
    } else {
      text = "# config: " + config_.dump() + "\n" + body_;
    }
    if (path_ == "-" || path_.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(path_);
      if (!out) throw CLI::ValidationError("cannot write: " + path_);
      out << text;
    }
  }

 private:
  std::string path_;
  bool json_;
  json config_;
  std::vector<std::string> cols_;
  std::string body_;
  json rows_ = json::array();
  std::vector<std::string> notes_;
};

// Grid points are independent pure computations; evaluate them on all
// hardware threads and emit in grid order afterwards.
template <typename Out, typename Fn>
std::vector<Out> parallel_map(std::size_t count, Fn&& fn) {
  std::vector<Out> results(count);
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers <= 1 || count < 8) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          results[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

CMatrix worked_example_matrix() {
  CMatrix a(4, 4);
  for (int i = 0; i < 4; ++i) a(i, i) = i + 1.0;
  return a;
}

CVector worked_example_u() { return CVector(4, Complex(0.5, 0)); }

int cmd_spectrum(const std::string& input, const std::string& inline_u,
                 bool example, int random_n, std::uint64_t seed,
                 const std::string& shape_name, const Grid& sgrid,
                 const Grid& tgrid, double tol_real, Emitter& em) {
  CMatrix a;
  CVector u, w, g, h;
  bool general_vectors = false;
  if (example) {
    a = worked_example_matrix();
    u = worked_example_u();
  } else if (random_n > 0) {
    RandomSource rsrc(seed);
    a = rsrc.matrix(random_n, random_n);
    u = rsrc.unit_vector(random_n);
    if (shape_name == "general") {
      w = rsrc.unit_vector(random_n);
      g = rsrc.unit_vector(random_n);
      h = rsrc.unit_vector(random_n);
      general_vectors = true;
    }
  } else {
    InputData d = load_input(input);
    a = d.a;
    if (!inline_u.empty()) {
      d.u = parse_inline_vector(inline_u);
      d.has_u = true;
    }
    if (!d.has_u) throw CLI::ValidationError("spectrum needs a vector u");
    u = d.u;
    if (shape_name == "general") {
      if (!(d.has_w && d.has_g && d.has_h))
        throw CLI::ValidationError("general shape needs u, w, g, h");
      w = d.w;
      g = d.g;
      h = d.h;
      general_vectors = true;
    }
  }
  bool hermitian = is_hermitian(a);
  em.header({"s", "t", "x0", "interlaces", "max_im", "eigenvalues_re_im"});
  std::vector<std::pair<double, double>> pts;
  for (double s : sgrid.points())
    for (double t : tgrid.points()) pts.emplace_back(s, t);
  std::vector<std::vector<std::string>> rows =
      parallel_map<std::vector<std::string>>(pts.size(), [&](std::size_t i) {
        auto [s, t] = pts[i];
        Rank2Perturbation p =
            shape_name == "diagonal"
                ? Rank2Perturbation::diagonal(a, u, s, t)
                : (general_vectors
                       ? Rank2Perturbation::general(a, u, w, g, h, s, t)
                       : Rank2Perturbation::antidiagonal(a, u, s, t));
        CVector ev = eigenvalues_dense(materialize(p));
        std::sort(ev.begin(), ev.end(),
                  [](Complex x, Complex y) { return x.real() < y.real(); });
        double max_im = 0;
        for (const auto& l : ev) max_im = std::max(max_im, std::abs(l.imag()));
        std::string x0 = "";
        std::string inter = "";
        if (hermitian && !general_vectors && shape_name != "diagonal" &&
            std::abs(norm2(u) - 1.0) < 1e-10) {
          try {
            InterlacingCondition cond = interlacing_condition(a, u, s, t);
            x0 = fmt(cond.x0);
            bool real_spec = true;
            std::vector<double> evr;
            for (const auto& l : ev) {
              if (std::abs(l.imag()) > tol_real * (1.0 + std::abs(l)))
                real_spec = false;
              evr.push_back(l.real());
            }
            if (real_spec) {
              std::vector<double> base = eigenvalues_hermitian(a);
              try {
                inter = verify_interlacing(base, evr) ? "true" : "false";
              } catch (const Error&) {
                inter = "degenerate";
              }
            } else {
              inter = "complex";
            }
          } catch (const Error&) {
            x0 = "";
            inter = "hypothesis-violated";
          }
        }
        std::vector<std::string> cells{fmt(s), fmt(t), x0, inter, fmt(max_im)};
        for (const auto& l : ev) {
          cells.push_back(fmt(l.real()));
          cells.push_back(fmt(l.imag()));
        }
        return cells;
      });
  for (const auto& cells : rows) em.row(cells);
  return 0;
}

int cmd_svsweep(const std::string& input, const std::string& inline_u,
                const std::string& inline_v, int random_n, std::uint64_t seed,
                const Grid& taugrid, Emitter& em) {
  CMatrix b;
  CVector u, v;
  if (random_n > 0) {
    RandomSource rsrc(seed);
    b = rsrc.matrix(random_n, random_n);
    u = rsrc.unit_vector(random_n);
    v = rsrc.unit_vector(random_n);
  } else {
    InputData d = load_input(input);
    b = d.a;
    if (!inline_u.empty()) {
      d.u = parse_inline_vector(inline_u);
      d.has_u = true;
    }
    if (!inline_v.empty()) {
      d.v = parse_inline_vector(inline_v);
      d.has_v = true;
    }
    if (!d.has_u || !d.has_v) throw CLI::ValidationError("svsweep needs u and v");
    u = normalized(d.u);
    v = normalized(d.v);
  }
  SVPerturbation p = SVPerturbation::make(b, u, v);
  SVSweep sweep = sv_convergence_table(p, taugrid.points());
  bool vanishing = false;
  if (b.square()) {
    SmallestSVAsymptotics sm = smallest_sv_asymptotics(p);
    vanishing = sm.vanishes;
    em.comment(vanishing
                   ? "vanishing branch: sigma_n * tau -> " + fmt(sm.rate)
                   : "converging branch: sigma_n -> " + fmt(sm.limit));
  }
  std::string slopes = "fitted log-log slopes (j>=2):";
  for (double s : sweep.slopes) slopes += " " + fmt(s);
  em.comment(slopes);
  std::vector<std::string> cols{"tau"};
  std::size_t n = sweep.rows.empty() ? 0 : sweep.rows.front().sigma.size();
  for (std::size_t j = 1; j <= n; ++j) cols.push_back("sigma" + std::to_string(j));
  for (std::size_t j = 2; j <= n; ++j)
    cols.push_back("dist" + std::to_string(j));
  if (vanishing) cols.push_back("sigma_n_times_tau");
  em.header(cols);
  for (const auto& row : sweep.rows) {
    std::vector<std::string> cells{fmt(row.tau)};
    for (double s : row.sigma) cells.push_back(fmt(s));
    for (double dd : row.dist_to_limit) cells.push_back(fmt(dd));
    if (vanishing) cells.push_back(fmt(row.sigma_n_times_tau));
    em.row(cells);
  }
  return 0;
}

int cmd_density(const std::string& measure_spec, const std::string& transform_spec,
                const Grid& xgrid, const std::string& eps_spec, double tol_atom,
                double pole_mask, Emitter& em) {
  auto split_params = [](const std::string& text) {
    std::vector<double> vals;
    auto eq = text.find('=');
    if (eq == std::string::npos) return vals;
    std::stringstream ss(text.substr(eq + 1));
    std::string part;
    while (std::getline(ss, part, ',')) vals.push_back(std::stod(part));
    return vals;
  };

  CauchyTransform g;
  if (measure_spec == "wigner") {
    g = CauchyTransform(SpectralMeasure::wigner());
  } else if (measure_spec == "bernoulli") {
    g = CauchyTransform(SpectralMeasure::bernoulli());
  } else if (measure_spec.rfind("delta", 0) == 0) {
    auto v = split_params(measure_spec);
    if (v.size() != 1) throw CLI::ValidationError("delta=a");
    g = CauchyTransform(SpectralMeasure::delta(v[0]));
  } else if (measure_spec.rfind("meixner", 0) == 0) {
    auto v = split_params(measure_spec);
    if (v.size() != 4) throw CLI::ValidationError("meixner=gamma,a,b,c");
    g = CauchyTransform(meixner_measure({v[0], v[1], v[2], v[3]}).measure);
  } else if (measure_spec.rfind("jacobi", 0) == 0) {
    auto eq = measure_spec.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("jacobi=file.json");
    std::ifstream in(measure_spec.substr(eq + 1));
    if (!in) throw CLI::ValidationError("cannot open jacobi file");
    json j = json::parse(in);
    JacobiData jd;
    jd.a = j.at("a").get<std::vector<double>>();
    jd.b = j.at("b").get<std::vector<double>>();
    if (j.contains("a_tail")) {
      jd.tail_constant = true;
      jd.a_tail = j.at("a_tail").get<double>();
      jd.b_tail = j.at("b_tail").get<double>();
    }
    g = CauchyTransform(SpectralMeasure::from_jacobi(std::move(jd)));
  } else {
    throw CLI::ValidationError("unknown measure: " + measure_spec);
  }

  if (transform_spec != "none") {
    auto v = split_params(transform_spec);
    if (transform_spec.rfind("u=", 0) == 0 && v.size() == 2)
      g = u_transform(g, v[0], v[1]);
    else if (transform_spec.rfind("t=", 0) == 0 && v.size() == 1)
      g = t_transform(g, v[0]);
    else if (transform_spec.rfind("w=", 0) == 0 && v.size() == 2)
      g = w_transform(g, v[0], v[1]);
    else
      throw CLI::ValidationError("transform must be u=p,q | t=tau | w=s,t | none");
  }

  std::vector<double> eps;
  {
    std::stringstream ss(eps_spec);
    std::string part;
    while (std::getline(ss, part, ',')) eps.push_back(std::stod(part));
  }
  auto fn = [&g](Complex z) { return g(z); };
  double span = xgrid.hi - xgrid.lo;
  StieltjesResult res = stieltjes_invert(fn, xgrid.points(), eps,
                                         xgrid.lo - 0.5 * span - 4.0,
                                         xgrid.hi + 0.5 * span + 4.0);
  em.header({"x", "density"});
  for (std::size_t i = 0; i < res.grid.size(); ++i) {
    bool near_atom = false;
    for (const auto& a : res.atoms)
      if (std::abs(res.grid[i] - a.location) < pole_mask) near_atom = true;
    if (res.flagged[i] || near_atom)
      em.row({fmt(res.grid[i]), ""});  // masked pole neighborhood
    else
      em.row({fmt(res.grid[i]), fmt(res.density[i])});
  }
  for (const auto& a : res.atoms)
    if (a.mass > tol_atom) em.comment("atom: " + fmt(a.location) + " mass " + fmt(a.mass));
  return 0;
}

int cmd_interlace(const std::string& input, const std::string& inline_u,
                  bool example, double s, double t, const Grid& xgrid,
                  Emitter& em) {
  CMatrix a;
  CVector u;
  if (example) {
    a = worked_example_matrix();
    u = worked_example_u();
  } else {
    InputData d = load_input(input);
    a = d.a;
    if (!inline_u.empty()) {
      d.u = parse_inline_vector(inline_u);
      d.has_u = true;
    }
    if (!d.has_u) throw CLI::ValidationError("interlace needs u");
    u = d.u;
  }
  if (!is_hermitian(a)) throw Error(ErrorCode::NotSelfAdjoint, "A must be Hermitian");
  u = normalized(u);
  WeylPartialFractions pf = weyl_partial_fractions(a, u, u);
  double m = moment(a, u).real();
  Rank2Perturbation p = Rank2Perturbation::antidiagonal(a, u, s, t);
  CVector ev = eigenvalues_dense(materialize(p));
  std::string evline = "perturbed eigenvalues:";
  for (const auto& l : ev) evline += " " + fmt(l.real());
  em.comment(evline);
  std::string base = "base eigenvalues:";
  for (const auto& l : pf.poles) base += " " + fmt(l.real());
  em.comment(base);

  // Both sides of sum c_j/(x - l_j) = -(1-s)(1-t) / ((s+t-st) x + st m).
  double denom_coeff = s + t - s * t;
  em.header({"x", "lhs", "rhs"});
  for (double x : xgrid.points()) {
    bool masked = false;
    for (const auto& l : pf.poles)
      if (std::abs(x - l.real()) < tol::pole_mask) masked = true;
    double hy_denom = denom_coeff * x + s * t * m;
    bool rhs_masked = std::abs(hy_denom) < tol::pole_mask;
    std::string lhs = "", rhs = "";
    if (!masked) {
      double v = 0;
      for (std::size_t j = 0; j < pf.poles.size(); ++j)
        v += pf.weights[j].real() / (x - pf.poles[j].real());
      lhs = fmt(v);
    }
    if (!rhs_masked) {
      if (denom_coeff == 0.0 && s * t * m == 0.0)
        rhs = "";  // undefined hyperbola; constant branch handled below
      else
        rhs = fmt(-(1.0 - s) * (1.0 - t) / hy_denom);
    }
    em.row({fmt(x), lhs, rhs});
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"rank-two perturbation spectra, singular-value asymptotics and "
               "measure transforms"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string input, out = "-", format = "csv";
  std::string inline_u, inline_v;
  std::uint64_t seed = 1;
  double tol_real = tol::real_spectrum;
  double tol_atom = tol::atom_mass;
  double pole_mask = tol::pole_mask;
  app.add_option("--seed", seed, "seed for random instances");

  auto* sp = app.add_subcommand("spectrum", "eigenvalues of A - s u w* - t g h*");
  std::string sp_shape = "antidiagonal";
  std::string sp_s = "0", sp_t = "0";
  bool sp_example = false;
  int sp_random = 0;
  sp->add_option("--input", input, "matrix/vector file (.json or .csv)");
  sp->add_option("--u", inline_u, "inline real vector, comma separated");
  sp->add_flag("--example", sp_example, "built-in diag(1,2,3,4), u = 0.5(1,1,1,1)");
  sp->add_option("--random", sp_random, "random complex instance of this size");
  sp->add_option("--shape", sp_shape, "antidiagonal | diagonal | general");
  sp->add_option("--s,--grid", sp_s, "s value or grid lo:hi:count");
  sp->add_option("--t", sp_t, "t value or grid lo:hi:count");
  sp->add_option("--out", out, "output path ('-' for stdout)");
  sp->add_option("--format", format, "csv | json");
  sp->add_option("--tol-real", tol_real, "realness tolerance for verdicts");

  auto* sv = app.add_subcommand("svsweep", "singular values of B - tau v u*");
  std::string sv_tau = "1e1:1e5:5";
  int sv_random = 0;
  sv->add_option("--input", input, "matrix/vector file (.json or .csv)");
  sv->add_option("--u", inline_u, "inline real vector, comma separated");
  sv->add_option("--v", inline_v, "inline real vector, comma separated");
  sv->add_option("--random", sv_random, "random complex instance of this size");
  sv->add_option("--tau,--grid", sv_tau, "tau grid lo:hi:count (log-spaced)");
  sv->add_option("--out", out, "output path");
  sv->add_option("--format", format, "csv | json");

  auto* de = app.add_subcommand("density", "transformed-measure densities");
  std::string de_measure = "wigner", de_transform = "none";
  std::string de_xgrid = "-3:3:601", de_eps = "1e-3,1e-5,1e-7";
  de->add_option("--measure", de_measure,
                 "wigner | bernoulli | delta=a | meixner=g,a,b,c | jacobi=file");
  de->add_option("--transform", de_transform, "none | u=p,q | t=tau | w=s,t");
  de->add_option("--xgrid,--grid", de_xgrid, "grid lo:hi:count");
  de->add_option("--eps", de_eps, "decreasing epsilon schedule");
  de->add_option("--out", out, "output path");
  de->add_option("--format", format, "csv | json");
  de->add_option("--tol-atom", tol_atom, "atom mass threshold");
  de->add_option("--tol-pole-mask", pole_mask, "density mask radius near atoms");

  auto* il = app.add_subcommand("interlace", "both sides of the secular equation");
  std::string il_xgrid = "-6:6:601";
  double il_s = 1.1, il_t = 1.2;
  bool il_example = false;
  il->add_option("--input", input, "matrix/vector file (.json or .csv)");
  il->add_option("--u", inline_u, "inline real vector, comma separated");
  il->add_flag("--example", il_example, "built-in diag(1,2,3,4) example");
  il->add_option("--s", il_s, "parameter s");
  il->add_option("--t", il_t, "parameter t");
  il->add_option("--xgrid,--grid", il_xgrid, "grid lo:hi:count");
  il->add_option("--out", out, "output path");
  il->add_option("--format", format, "csv | json");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return 0;
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  json config{{"seed", seed}, {"format", format}};
  try {
    if (sp->parsed()) {
      config["subcommand"] = "spectrum";
      config["shape"] = sp_shape;
      config["s"] = sp_s;
      config["t"] = sp_t;
      Emitter em(out, format == "json", config);
      int rc = cmd_spectrum(input, inline_u, sp_example, sp_random, seed,
                            sp_shape, parse_grid(sp_s, false),
                            parse_grid(sp_t, false), tol_real, em);
      em.finish();
      return rc;
    }
    if (sv->parsed()) {
      config["subcommand"] = "svsweep";
      config["tau"] = sv_tau;
      Emitter em(out, format == "json", config);
      int rc = cmd_svsweep(input, inline_u, inline_v, sv_random, seed,
                           parse_grid(sv_tau, true), em);
      em.finish();
      return rc;
    }
    if (de->parsed()) {
      config["subcommand"] = "density";
      config["measure"] = de_measure;
      config["transform"] = de_transform;
      Emitter em(out, format == "json", config);
      int rc = cmd_density(de_measure, de_transform, parse_grid(de_xgrid, false),
                           de_eps, tol_atom, pole_mask, em);
      em.finish();
      return rc;
    }
    if (il->parsed()) {
      config["subcommand"] = "interlace";
      config["s"] = il_s;
      config["t"] = il_t;
      Emitter em(out, format == "json", config);
      int rc = cmd_interlace(input, inline_u, il_example, il_s, il_t,
                             parse_grid(il_xgrid, false), em);
      em.finish();
      return rc;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "input parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "input parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace ranktwo
