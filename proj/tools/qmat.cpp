// qmat: command-line front end for the quantum matrix library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qmat/json_io.hpp"
#include "qmat/qmat.hpp"
#include "qmat/verify.hpp"

namespace {

using qmat::ErrorKind;
using qmat::io::json;

enum Exit : int {
  kOk = 0,
  kCheckFailed = 1,
  kParse = 2,
  kDimension = 3,
  kNotDerivation = 4,
  kResource = 5,
  kOther = 6,
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
      return kParse;
    case ErrorKind::DimensionMismatch:
      return kDimension;
    case ErrorKind::NotADerivation:
    case ErrorKind::Inconsistent:
    case ErrorKind::ConditionViolated:
      return kNotDerivation;
    case ErrorKind::ResourceLimit:
      return kResource;
    default:
      return kOther;
  }
}

struct Globals {
  std::string out = "json";
  std::size_t max_terms = 0;
  int padding = 1;
  bool timings = false;
};

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) qmat::fail(ErrorKind::ParseError, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    qmat::fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

template <class Tag>
void emit(const Globals& g, const qmat::SparseElement<Tag>& x, int n) {
  if (g.out == "markdown")
    std::cout << "`" << x.to_string() << "`\n";
  else
    std::cout << qmat::io::to_json(x, n).dump(2) << "\n";
}

void emit_bool(const Globals& g, const std::string& key, bool v) {
  if (g.out == "markdown")
    std::cout << key << ": " << (v ? "true" : "false") << "\n";
  else
    std::cout << json{{key, v}}.dump(2) << "\n";
}

int emit_checks(const Globals& g, const qmat::CheckList& l) {
  if (g.out == "markdown") {
    std::cout << "| relation | status |\n|---|---|\n";
    for (const auto& e : l) std::cout << "| `" << e.name << "` | " << (e.pass ? "pass" : "**fail**") << " |\n";
  } else {
    std::cout << json{{"status", qmat::all_pass(l) ? "pass" : "fail"}, {"relations", qmat::io::to_json(l)}}.dump(2) << "\n";
  }
  return qmat::all_pass(l) ? kOk : kCheckFailed;
}

std::string mu_markdown(const std::vector<qmat::DetPoly>& mu) {
  std::ostringstream os;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    os << "- mu_" << j + 1 << " = ";
    if (mu[j].empty()) os << "0";
    bool first = true;
    for (const auto& [k, c] : mu[j]) {
      os << (first ? "" : " + ") << "(" << c.to_string() << ")*det_q^" << k;
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

std::vector<int> parse_index_list(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      qmat::fail(ErrorKind::ParseError, "bad index list \"" + s + "\"");
    }
  }
  return v;
}

qmat::StepIndex parse_step(const std::string& s) {
  const auto v = parse_index_list(s);
  if (v.size() != 2) qmat::fail(ErrorKind::ParseError, "step must be written j,beta");
  return {v[0], v[1]};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in quantum matrices, the quantum torus and their derivations"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out", g.out, "Output format")->check(CLI::IsMember({"json", "markdown"}));
  app.add_option("--max-terms", g.max_terms, "Term-count ceiling for intermediate results (also QMAT_MAX_TERMS)");
  app.add_option("--box", g.padding, "Padding added to the exponent hull when rebasing")->check(CLI::NonNegativeNumber);

  int n = 2;
  std::string alg = "Mq";
  std::string lhs, rhs, file, rows, cols;
  int b_index = -1;
  int j_index = 1;
  bool sl = false;
  int k_power = -1;
  std::string step;

  auto* mul = app.add_subcommand("mul", "Multiply two elements");
  mul->add_option("--alg", alg, "Algebra")->check(CLI::IsMember({"Mq", "torus"}));
  mul->add_option("lhs", lhs, "Left factor (JSON file, - for stdin)")->required();
  mul->add_option("rhs", rhs, "Right factor (JSON file)")->required();

  auto* det = app.add_subcommand("det", "Quantum determinant");
  det->add_option("--n", n, "Matrix size")->required();

  auto* minor = app.add_subcommand("minor", "Quantum minor [I | Gamma], or b_i with --b");
  minor->add_option("--n", n, "Matrix size")->required();
  minor->add_option("--rows", rows, "Comma-separated row subset");
  minor->add_option("--cols", cols, "Comma-separated column subset");
  minor->add_option("--b", b_index, "Index i of b_i, 0 <= i <= 2n");

  auto* emb = app.add_subcommand("embed", "Image of an O_q(M_n) element in the quantum torus");
  emb->add_option("file", file, "Element (JSON)")->required();
  emb->add_option("--n", n, "Expected matrix size");

  auto* central = app.add_subcommand("central", "Does the element commute with every generator?");
  central->add_option("--alg", alg, "Algebra")->check(CLI::IsMember({"Mq", "torus"}));
  central->add_option("file", file, "Element (JSON)")->required();
  central->add_option("--n", n, "Expected matrix size");

  auto* rebase = app.add_subcommand("rebase", "Express a torus element in the PBW basis of a tower step");
  rebase->add_option("file", file, "Torus element (JSON)")->required();
  rebase->add_option("--step", step, "Step j,beta (default: the top step)");

  auto* table = app.add_subcommand("export-table", "Every intermediate generator of the tower");
  table->add_option("--n", n, "Matrix size")->required();

  auto* der = app.add_subcommand("derivation", "Derivation tools");
  der->require_subcommand(1);
  der->fallthrough();
  auto* dcheck = der->add_subcommand("check", "Check every defining relation");
  dcheck->add_option("file", file, "Derivation (JSON)")->required();
  auto* ddec = der->add_subcommand("decompose", "Split the torus extension as ad_x + theta");
  ddec->add_option("file", file, "Derivation (JSON)")->required();
  auto* dhh1 = der->add_subcommand("hh1", "Coordinates in HH^1 over the centre");
  dhh1->add_option("file", file, "Derivation (JSON)")->required();
  dhh1->add_option("--k", k_power, "Power of det_q to clear for GLq derivations (default: smallest that works)");
  auto* dbasis = der->add_subcommand("basis", "Emit D_j, or the SL combination with --sl");
  dbasis->add_option("--n", n, "Matrix size")->required();
  dbasis->add_option("--j", j_index, "Index j")->required();
  dbasis->add_flag("--sl", sl, "Emit the SL_n basis derivation with index j");

  auto* suite = app.add_subcommand("verify-suite", "Run every check at a given n");
  suite->add_option("--n", n, "Matrix size")->required();
  suite->add_flag("--timings", g.timings, "Include wall times (output is then not byte-stable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (const char* env = std::getenv("QMAT_MAX_TERMS"); env && g.max_terms == 0) {
      try {
        g.max_terms = static_cast<std::size_t>(std::stoull(env));
      } catch (const std::exception&) {
        qmat::fail(ErrorKind::ParseError, "QMAT_MAX_TERMS is not a number");
      }
    }
    qmat::TermLimit::set(g.max_terms);
    const qmat::ExpressOptions xopt{g.padding};

    if (*mul) {
      const json a = read_json(lhs), b = read_json(rhs);
      if (alg == "Mq") {
        const auto x = qmat::io::element_from_json<qmat::MqTag>(a);
        const auto y = qmat::io::element_from_json<qmat::MqTag>(b);
        if (x.n() != y.n()) qmat::fail(ErrorKind::DimensionMismatch, "factors over n=" + std::to_string(x.n()) + " and n=" + std::to_string(y.n()));
        emit(g, x * y, x.n());
      } else {
        const auto x = qmat::io::element_from_json<qmat::TorusTag>(a);
        const auto y = qmat::io::element_from_json<qmat::TorusTag>(b);
        if (x.n() != y.n()) qmat::fail(ErrorKind::DimensionMismatch, "factors over n=" + std::to_string(x.n()) + " and n=" + std::to_string(y.n()));
        emit(g, x * y, x.n());
      }
      return kOk;
    }
    if (*det) {
      emit(g, qmat::qdet(n), n);
      return kOk;
    }
    if (*minor) {
      if (b_index >= 0) {
        emit(g, qmat::b_minor(n, b_index), n);
      } else {
        emit(g, qmat::qminor(n, {parse_index_list(rows), parse_index_list(cols)}), n);
      }
      return kOk;
    }
    if (*emb) {
      const auto x = qmat::io::element_from_json<qmat::MqTag>(read_json(file), emb->count("--n") ? n : 0);
      emit(g, qmat::embed(x), x.n());
      return kOk;
    }
    if (*central) {
      const json j = read_json(file);
      const int expect = central->count("--n") ? n : 0;
      if (qmat::io::alg_of(j, alg) == "torus")
        emit_bool(g, "central", qmat::torus_commutes_with_all_generators(qmat::io::element_from_json<qmat::TorusTag>(j, expect)));
      else
        emit_bool(g, "central", qmat::commutes_with_all_generators(qmat::io::element_from_json<qmat::MqTag>(j, expect)));
      return kOk;
    }
    if (*rebase) {
      const auto x = qmat::io::element_from_json<qmat::TorusTag>(read_json(file));
      const qmat::Tower& tw = qmat::tower(x.n());
      const qmat::StepIndex r = step.empty() ? qmat::top_step(x.n()) : parse_step(step);
      const auto y = tw.rebase(r, x, tw.default_box(r, x, g.padding));
      if (g.out == "markdown") {
        std::cout << "`" << y.to_string() << "`\n";
      } else {
        json out = qmat::io::element_to_json(y, x.n());
        out["alg"] = "step";
        out["step"] = r.to_string();
        std::cout << out.dump(2) << "\n";
      }
      return kOk;
    }
    if (*table) {
      std::cout << qmat::io::table_to_json(qmat::tower(n)).dump(2) << "\n";
      return kOk;
    }
    if (*der) {
      if (*dbasis) {
        const qmat::MqDerivation d = sl ? qmat::sl_basis_derivation(n, j_index) : qmat::basis_derivation(n, j_index);
        std::cout << qmat::io::to_json(d).dump(2) << "\n";
        return kOk;
      }
      const qmat::io::DerivationFile f = qmat::io::derivation_from_json(read_json(file));
      if (*dcheck) {
        qmat::CheckList l;
        if (f.alg == "Mq") l = qmat::check_derivation(f.mq);
        else if (f.alg == "torus") l = qmat::check_derivation(f.torus);
        else l = qmat::check_derivation(f.gl);
        const int rc = emit_checks(g, l);
        if (rc != kOk) {
          for (const auto& e : l)
            if (!e.pass) {
              std::cerr << "NotADerivation: relation " << e.name << " fails (" << e.witness << ")\n";
              break;
            }
          return kNotDerivation;
        }
        return kOk;
      }
      if (*ddec) {
        qmat::TorusDerivation t;
        if (f.alg == "Mq") t = qmat::lift_to_torus(f.mq);
        else if (f.alg == "GLq") t = qmat::lift_to_torus(f.gl);
        else t = f.torus;
        const auto dec = qmat::decompose_torus_derivation(t);
        if (g.out == "markdown") {
          std::cout << "x = `" << dec.x.to_string() << "`\n\n";
          for (int s = 0; s < f.n * f.n; ++s)
            std::cout << "- z" << qmat::GeneratorIndex::from_slot(f.n, s).to_string() << " = `" << dec.z[static_cast<std::size_t>(s)].to_string() << "`\n";
        } else {
          std::cout << qmat::io::to_json(dec, f.n).dump(2) << "\n";
        }
        return kOk;
      }
      if (*dhh1) {
        if (f.alg == "torus") qmat::fail(ErrorKind::InvalidSpec, "hh1 needs an Mq or GLq derivation");
        if (f.alg == "Mq") {
          const auto h = qmat::express_hh1(f.mq, xopt);
          if (g.out == "markdown")
            std::cout << "inner: `" << h.inner.to_string() << "`\n\n" << mu_markdown(h.mu);
          else
            std::cout << qmat::io::to_json(h, f.n).dump(2) << "\n";
        } else {
          const auto h = qmat::gl_express(f.gl, k_power, 8, xopt);
          if (g.out == "markdown")
            std::cout << "inner: `" << h.inner.to_string() << "`\n\n" << mu_markdown(h.mu);
          else
            std::cout << qmat::io::to_json(h, f.n).dump(2) << "\n";
        }
        return kOk;
      }
    }
    if (*suite) {
      const auto rep = qmat::verify::run_suite(n);
      if (g.out == "markdown")
        std::cout << qmat::verify::to_markdown(rep, g.timings);
      else
        std::cout << qmat::verify::to_json(rep, g.timings).dump(2) << "\n";
      return rep.all_pass() ? kOk : kCheckFailed;
    }
  } catch (const qmat::Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
