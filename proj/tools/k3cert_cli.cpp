// k3cert: command-line front end for the certificate builders.
//
// Exit codes: 0 when a verdict was computed (including Fail and infeasible),
// 1 for usage and validation errors, 2 when an internal guard tripped.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "k3cert/arith.hpp"
#include "k3cert/condition.hpp"
#include "k3cert/k3lattice.hpp"
#include "k3cert/qform.hpp"
#include "k3cert/report_json.hpp"
#include "k3cert/weilpoly.hpp"

namespace {

using k3cert::report::Json;
namespace arith = k3cert::arith;
namespace cond = k3cert::condition;
namespace weil = k3cert::weil;

// One "path: value" line per leaf.
void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    if (j.empty()) out << prefix << ": {}\n";
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    bool scalars = true;
    for (const auto& v : j) scalars = scalars && v.is_primitive();
    if (scalars) {
      out << prefix << ": [";
      for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      out << "]\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

// Grid view of a feasibility table: rows rho, columns h.
void print_table(const Json& result, std::ostream& out) {
  out << "p = " << result["p"].dump() << "   + feasible   . infeasible   U unsupported witness\n";
  out << "rho\\h";
  for (int h = 1; h <= 10; ++h) out << (h < 10 ? "  " : " ") << h;
  out << "\n";
  std::size_t i = 0;
  const Json& cells = result["cells"];
  for (int rho = 2; rho <= 20; rho += 2) {
    out << (rho < 10 ? "    " : "   ") << rho;
    for (int h = 1; h <= 10; ++h, ++i) {
      const Json& c = cells[i];
      const char mark = !c["feasible"].get<bool>() ? '.' : c["witness_status"] == "UnsupportedCase" ? 'U' : '+';
      out << "  " << mark;
    }
    out << "\n";
  }
}

struct Output {
  bool json = false;
  void emit(const std::string& command, const Json& inputs, const Json& result) const {
    const Json doc{{"command", command}, {"inputs", inputs}, {"result", result}};
    if (json) {
      std::cout << doc.dump(2) << "\n";
      return;
    }
    if (command == "table") {
      print_table(result, std::cout);
      return;
    }
    flatten(doc, "", std::cout);
  }
};

std::uint64_t require_prime(std::uint64_t p) {
  if (!arith::is_prime(p)) throw std::invalid_argument("--p must be prime, got " + std::to_string(p));
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates for K3 L-function candidates and lattice constructions", "k3cert"};
  app.require_subcommand(1);
  // "--h" is the height, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  Output out;
  app.add_flag("--json", out.json, "Emit JSON instead of text");
  app.fallthrough();

  // construct
  std::uint64_t c_p = 0;
  int c_m = 0, c_h = 0, c_a_start = 1, c_a_cap = 50;
  auto* construct = app.add_subcommand("construct", "Build a polynomial meeting the condition for (p, m, h)");
  construct->add_option("--p", c_p, "Prime")->required();
  construct->add_option("--m", c_m, "Half degree, 1..10")->required();
  construct->add_option("--h", c_h, "Height, 1..m")->required();
  construct->add_option("--a-start", c_a_start, "First exponent a to try");
  construct->add_option("--a-cap", c_a_cap, "Last exponent a to try");

  // check
  std::uint64_t k_p = 0;
  std::string k_coeffs;
  auto* check = app.add_subcommand("check", "Check a polynomial against the six-part condition");
  check->add_option("--p", k_p, "Prime")->required();
  check->add_option("--coeffs", k_coeffs, "Ascending coefficients c0,c1,... (rationals as num/den)")->required();

  // lattice
  int l_m = 0;
  std::string l_n;
  std::optional<bool> l_square;
  std::optional<std::uint64_t> l_p1;
  std::vector<std::string> l_split;
  auto* lat = app.add_subcommand("lattice", "Build and verify the lattice N for a CM field of degree 2m");
  lat->add_option("--m", l_m, "6..10")->required();
  lat->add_option("--n", l_n, "Positive integer with disc(F) = (-1)^m n mod squares")->required();
  lat->add_option("--disc-square", l_square, "Whether n is a square (checked against n)");
  lat->add_option("--p1", l_p1, "Prime at which some place of F0 does not split (m = 7, 8)");
  lat->add_option("--split", l_split, "prime=true|false split-table entry (repeatable)");

  // feasible
  std::uint64_t f_p = 0;
  int f_rho = 0, f_h = 0;
  bool f_witness = false;
  auto* feas = app.add_subcommand("feasible", "Decide whether (rho, h) occurs, optionally with a witness");
  feas->add_option("--p", f_p, "Prime >= 5")->required();
  feas->add_option("--rho", f_rho, "Picard number, even")->required();
  feas->add_option("--height", f_h, "Height")->required();
  feas->add_flag("--witness", f_witness, "Construct and certify a witness polynomial");

  // table
  std::uint64_t t_p = 0;
  bool t_witness = false;
  auto* table = app.add_subcommand("table", "Feasibility grid over rho = 2..20, h = 1..10");
  table->add_option("--p", t_p, "Prime >= 5")->required();
  table->add_flag("--witness", t_witness, "Construct and certify every supported witness");

  // hilbert
  std::string hb_a, hb_b, hb_place;
  auto* hil = app.add_subcommand("hilbert", "Hilbert symbol (a, b)_v as a bit");
  hil->add_option("--a", hb_a, "Nonzero rational")->required();
  hil->add_option("--b", hb_b, "Nonzero rational")->required();
  hil->add_option("--place", hb_place, "Prime or inf")->required();

  // strip
  std::string s_coeffs;
  auto* strip = app.add_subcommand("strip", "Remove every cyclotomic factor");
  strip->add_option("--coeffs", s_coeffs, "Ascending coefficients c0,c1,...")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*construct) {
      require_prime(c_p);
      if (c_m < 1 || c_m > 10) throw std::invalid_argument("--m must be in 1..10");
      if (c_h < 1 || c_h > c_m) throw std::invalid_argument("--h must be in 1..m");
      const bool squared = c_m == 10 && c_h % 2 == 0;
      const auto w = squared ? cond::construct_L_even_h(c_p, c_h) : cond::construct_L(c_p, c_m, c_h, c_a_start, c_a_cap);
      Json result = k3cert::report::to_json(w);
      result["path"] = squared ? "squared" : "direct";
      out.emit("construct", {{"p", c_p}, {"m", c_m}, {"h", c_h}, {"a_start", c_a_start}, {"a_cap", c_a_cap}}, result);
    } else if (*check) {
      require_prime(k_p);
      const auto L = weil::parse_poly(k_coeffs);
      out.emit("check", {{"p", k_p}, {"coeffs", k_coeffs}},
               k3cert::report::to_json(cond::check_condition1(L, k_p)));
    } else if (*lat) {
      k3cert::qform::CMFieldData F;
      F.degree = 2 * l_m;
      if (l_n.empty() || l_n.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("--n must be a positive integer");
      }
      F.n = arith::Integer(l_n);
      F.disc_is_square = l_square.value_or(arith::square_class(arith::Rat(F.n)).is_trivial());
      F.nonsplit_witness = l_p1;
      Json split = Json::object();
      for (const std::string& entry : l_split) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--split expects prime=true|false, got " + entry);
        const std::string key = entry.substr(0, eq);
        const std::string val = entry.substr(eq + 1);
        if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos) {
          throw std::invalid_argument("--split key must be a prime, got " + key);
        }
        if (val != "true" && val != "false") throw std::invalid_argument("--split value must be true or false");
        F.split_table[std::stoull(key)] = val == "true";
        split[key] = val == "true";
      }
      if ((l_m == 7 || l_m == 8) && !l_p1) throw std::invalid_argument("--p1 is required for m = 7 and m = 8");
      const auto report = k3cert::lattice::verify_latticeCM(l_m, F);
      Json inputs{{"m", l_m},
                  {"n", k3cert::report::integer(F.n)},
                  {"disc_square", F.disc_is_square},
                  {"p1", l_p1 ? Json(*l_p1) : Json(nullptr)},
                  {"split", split}};
      out.emit("lattice", inputs, k3cert::report::to_json(report));
    } else if (*feas) {
      const auto v = cond::feasibility(f_p, f_rho, f_h, f_witness);
      out.emit("feasible", {{"p", f_p}, {"rho", f_rho}, {"height", f_h}, {"witness", f_witness}},
               k3cert::report::to_json(v));
    } else if (*table) {
      Json cells = Json::array();
      for (int rho = 2; rho <= 20; rho += 2) {
        for (int h = 1; h <= 10; ++h) {
          const auto v = cond::feasibility(t_p, rho, h, t_witness);
          Json cell{{"rho", rho},
                    {"h", h},
                    {"feasible", v.feasible},
                    {"reason", cond::to_string(v.reason)},
                    {"witness_status", cond::to_string(v.witness_status)}};
          if (v.witness) cell["witness"] = weil::to_text(v.witness->L);
          cells.push_back(cell);
        }
      }
      out.emit("table", {{"p", t_p}, {"witness", t_witness}}, {{"p", t_p}, {"cells", cells}});
    } else if (*hil) {
      const arith::Rat a = arith::parse_rational(hb_a);
      const arith::Rat b = arith::parse_rational(hb_b);
      if (a == 0 || b == 0) throw std::invalid_argument("Hilbert symbol arguments must be nonzero");
      const auto v = arith::Place::parse(hb_place);
      const auto bit = arith::hilbert(a, b, v).bit;
      out.emit("hilbert", {{"a", hb_a}, {"b", hb_b}, {"place", hb_place}},
               {{"symbol", bit}, {"value", bit ? -1 : 1}});
    } else if (*strip) {
      const auto P = weil::parse_poly(s_coeffs);
      out.emit("strip", {{"coeffs", s_coeffs}}, k3cert::report::to_json(weil::strip_cyclotomic(P)));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
