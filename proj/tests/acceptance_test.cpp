// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "k3cert/arith.hpp"
#include "k3cert/condition.hpp"
#include "k3cert/k3lattice.hpp"
#include "k3cert/qform.hpp"
#include "k3cert/weilpoly.hpp"
#include "oracles.hpp"

using namespace k3cert;
using arith::Place;
using arith::Rat;
using weil::RatPoly;
using Clock = std::chrono::steady_clock;

namespace {

long long elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

// Collects the first few failure notes of a criterion.
struct Verdict {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (notes.size() < 5) notes.push_back(what);
  }
};

std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = std::string(K3CERT_BIN) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, out};
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

qform::CMFieldData field(int m, const arith::Integer& n, std::optional<std::uint64_t> p1 = std::nullopt) {
  qform::CMFieldData F;
  F.degree = 2 * m;
  F.n = n;
  F.disc_is_square = arith::square_class(Rat(n)).is_trivial();
  F.nonsplit_witness = p1;
  return F;
}

Rat R(long n, long d = 1) {
  Rat x(n, d);
  x.canonicalize();
  return x;
}

// 1. Worked example through the CLI.
Verdict worked_example(long long& ms) {
  Verdict v;
  const auto start = Clock::now();
  const auto [code, out] = run_cli("check --p 7 --coeffs 1,1/7,1,1/7,1 --json");
  ms = elapsed_ms(start);
  v.require(code == 0, "exit code " + std::to_string(code));
  if (code != 0) return v;
  const auto j = nlohmann::json::parse(out)["result"];
  v.require(j["verdict"] == "Pass", "verdict");
  v.require(j["m"] == 2 && j["h"] == 1 && j["a"] == 1 && j["e"] == 1, "(m,h,a,e)");
  const auto expected = nlohmann::json::parse(
      R"([{"length":1,"slope":"-1"},{"length":2,"slope":"0"},{"length":1,"slope":"1"}])");
  v.require(j["slope_profile"] == expected, "slope profile " + j["slope_profile"].dump());
  v.require(ms < 100, "took " + std::to_string(ms) + " ms");
  return v;
}

// 2. All 55 (m, h) pairs for p = 5, 7.
Verdict constructor_sweep(long long& ms) {
  Verdict v;
  const auto start = Clock::now();
  for (std::uint64_t p : {5u, 7u}) {
    for (int m = 1; m <= 10; ++m) {
      for (int h = 1; h <= m; ++h) {
        const std::string tag = "p=" + std::to_string(p) + " m=" + std::to_string(m) + " h=" + std::to_string(h);
        try {
          const auto w = m == 10 && h % 2 == 0 ? condition::construct_L_even_h(p, h) : condition::construct_L(p, m, h);
          const auto r = condition::check_condition1(w.L, p);
          v.require(r.passed() && r.m == m && r.h == h, tag);
          v.require(r.e == (m == 10 && h % 2 == 0 ? 2 : 1), tag + " e");
        } catch (const std::exception& e) {
          v.require(false, tag + ": " + e.what());
        }
      }
    }
  }
  ms = elapsed_ms(start);
  v.require(ms < 60000, "took " + std::to_string(ms) + " ms");
  return v;
}

// 3. Product formula on random pairs; closed form against local solubility.
Verdict hilbert_symbols(long long& ms) {
  Verdict v;
  const auto start = Clock::now();
  std::mt19937_64 rng(20240917);
  auto draw = [&] {
    long n = 0;
    while (n == 0) n = static_cast<long>(rng() % 20001) - 10000;
    return R(n, static_cast<long>(rng() % 10000) + 1);
  };
  for (int i = 0; i < 500; ++i) {
    const Rat a = draw(), b = draw();
    std::set<std::uint64_t> support{2};
    for (auto p : arith::prime_support(a)) support.insert(p);
    for (auto p : arith::prime_support(b)) support.insert(p);
    arith::Br2Class total = arith::hilbert(a, b, Place::infinite());
    for (auto p : support) total += arith::hilbert(a, b, Place::finite(p));
    v.require(total.is_trivial(), "product formula at (" + a.get_str() + ", " + b.get_str() + ")");
  }
  const std::vector<Rat> values{R(1), R(-1), R(2),  R(-2), R(3),  R(-3),    R(5),  R(-5),
                                R(6), R(-10), R(7), R(-7), R(1, 3), R(-3, 4), R(14), R(-15)};
  for (const Rat& a : values) {
    for (const Rat& b : values) {
      for (long p : {2L, 3L, 5L, 7L}) {
        v.require(arith::hilbert(a, b, Place::finite(p)).bit == oracle::hilbert_local(a, b, p),
                  "grid (" + a.get_str() + ", " + b.get_str() + ")_" + std::to_string(p));
      }
      v.require(arith::hilbert(a, b, Place::infinite()).bit == oracle::hilbert_real(a, b), "grid at inf");
    }
  }
  ms = elapsed_ms(start);
  return v;
}

// 4. Lambda_K3 invariants and complement invariants per case.
Verdict lattice_invariants(long long& ms) {
  Verdict v;
  const auto start = Clock::now();
  const auto amb = lattice::k3_ambient_invariants();
  v.require(amb.det.representative() == -1, "ambient det");
  v.require(amb.sig == qform::Signature{3, 19}, "ambient signature");
  v.require(amb.nontrivial_places() == std::set<Place>{Place::finite(2), Place::infinite()}, "ambient Hasse support");
  std::vector<Rat> diag;
  for (int i = 0; i < 3; ++i) diag.insert(diag.end(), {Rat(1), Rat(-1)});
  for (int i = 0; i < 16; ++i) diag.emplace_back(-1);
  v.require(qform::invariants(qform::QuadSpace(diag)) == amb, "ambient vs U^3 + <-1>^16");

  for (int m = 6; m <= 10; ++m) {
    for (long n : {1L, 2L, 3L, 5L, 6L, 7L, 12L, 13L, 30L, 49L}) {
      if ((m == 7 || m == 8) && n == 1) continue;
      const auto r = lattice::verify_latticeCM(m, field(m, n, 3));
      const std::string tag = "m=" + std::to_string(m) + " n=" + std::to_string(n);
      v.require(r.T_invariants.det == arith::square_class(Rat(n)), tag + " det(T) != n");
      v.require(r.N_invariants.det * r.T_invariants.det == amb.det, tag + " det(N) det(T) != -1");
      v.require(r.T_invariants.sig == qform::Signature{2, 2 * m - 2}, tag + " signature");
    }
  }
  ms = elapsed_ms(start);
  return v;
}

// 5. Discrepancy sets on 50 seeded inputs per case.
Verdict hyperbolicity(long long& ms) {
  Verdict v;
  const auto start = Clock::now();
  std::mt19937_64 rng(77);
  const auto primes = oracle::primes_upto(500);
  for (const char* which : {"6", "7", "8", "9", "10sq"}) {
    const std::string tag(which);
    const int m = tag == "10sq" ? 10 : std::stoi(tag);
    for (int t = 0; t < 50; ++t) {
      arith::Integer n = static_cast<long>(rng() % 1000) + 1;
      if (m == 10) n = n * n;
      std::uint64_t p1 = 2;
      while (p1 == 2) p1 = primes[rng() % primes.size()];
      const auto r = lattice::verify_latticeCM(m, field(m, n, p1));
      const auto& d = r.bayer.hyperbolicity.discrepancies;
      if (m == 7 || m == 8) {
        bool only_p1 = true;
        for (auto q : d) only_p1 = only_p1 && q == p1;
        v.require(only_p1, "m=" + tag + " n=" + n.get_str() + " p1=" + std::to_string(p1));
      } else {
        v.require(d.empty(), "m=" + tag + " n=" + n.get_str());
      }
    }
  }
  ms = elapsed_ms(start);
  v.require(ms < 10000, "took " + std::to_string(ms) + " ms");
  return v;
}

// 6. No vector of square -2 in <2> + <-8n>.
Verdict no_minus_two(long long& ms) {
  Verdict v;
  const auto start = Clock::now();
  for (long n = 1; n <= 200; ++n) {
    const auto c = lattice::no_minus_two_vector(n, 1000);
    v.require(c.congruence_obstruction, "no congruence obstruction at n=" + std::to_string(n));
    v.require(c.minus_two_solutions == 0, "search found -2 at n=" + std::to_string(n));
    v.require(c.certified, "not certified at n=" + std::to_string(n));
    v.require(c.plus_two_vector == std::make_pair<std::int64_t, std::int64_t>(1, 0), "+2 vector at n=" + std::to_string(n));
  }
  ms = elapsed_ms(start);
  return v;
}

// 7. Feasibility grids for p = 7 and p = 5.
Verdict feasibility_grid(long long& ms) {
  Verdict v;
  const auto start = Clock::now();
  for (std::uint64_t p : {7u, 5u}) {
    for (int rho = 2; rho <= 20; rho += 2) {
      for (int h = 1; h <= 10; ++h) {
        const std::string tag = "p=" + std::to_string(p) + " rho=" + std::to_string(rho) + " h=" + std::to_string(h);
        const auto f = condition::feasibility(p, rho, h, true);
        v.require(f.feasible == (rho <= 22 - 2 * h), tag + " feasibility");
        const bool unsupported = p == 5 && rho == 2 && h % 2 == 1;
        v.require((f.witness_status == condition::WitnessStatus::UnsupportedCase) == unsupported, tag + " status");
        if (f.feasible && !unsupported) {
          v.require(f.witness && condition::check_condition1(f.witness->L, p).passed(), tag + " witness");
        }
      }
    }
  }
  ms = elapsed_ms(start);
  return v;
}

// 8. Three mutations of 20 passing witnesses.
Verdict mutations(long long& ms, int& classified) {
  Verdict v;
  const auto start = Clock::now();
  std::vector<std::tuple<std::uint64_t, int, int>> cases;
  for (int m = 1; m <= 5; ++m)
    for (int h = 1; h <= m; ++h) cases.emplace_back(7, m, h);
  for (int m = 1; cases.size() < 20; ++m) cases.emplace_back(5, m, 1);

  const std::vector<int> cyclo{3, 4, 5, 6, 7, 8, 9, 10, 12};
  classified = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto [p, m, h] = cases[i];
    const std::string tag = "p=" + std::to_string(p) + " m=" + std::to_string(m) + " h=" + std::to_string(h);
    const auto w = condition::construct_L(p, m, h);

    const RatPoly L1 = w.L * weil::cyclotomic_polynomial(cyclo[i % cyclo.size()]);
    const auto r1 = condition::check_condition1(L1, p);
    const bool ok1 = r1.checks.at("no_roots_of_unity").status == condition::Status::Fail &&
                     r1.verdict == condition::Status::Fail;
    v.require(ok1, tag + " cyclotomic mutation");

    // Divide the symmetric pair of p-adic coefficients by a prime other than p.
    const std::uint64_t ell = p == 7 ? 11 : 13;
    std::vector<Rat> c = w.L.coeffs();
    c[h] /= Rat(static_cast<long>(ell));
    c[2 * m - h] /= h == m ? Rat(1) : Rat(static_cast<long>(ell));
    const auto r2 = condition::check_condition1(RatPoly(c), p);
    const bool ok2 = r2.checks.at("integral_away_from_p").status == condition::Status::Fail &&
                     r2.verdict == condition::Status::Fail;
    v.require(ok2, tag + " denominator mutation");

    const auto r3 = condition::check_condition1(w.L * w.L, p);
    bool intact = r3.verdict == condition::Status::Pass && r3.e == 2;
    for (const auto& [name, b] : r3.checks) intact = intact && b.status == condition::Status::Pass;
    v.require(intact, tag + " squaring mutation");

    classified += ok1 + ok2 + intact;
  }
  v.require(classified == 60, std::to_string(classified) + "/60 classified");
  ms = elapsed_ms(start);
  return v;
}

// 9. No floating point anywhere in the sources or tests.
Verdict exactness_audit(long long& ms, int& files) {
  Verdict v;
  const auto start = Clock::now();
  // Split literals so this file does not flag itself.
  const std::vector<std::string> tokens{"\\bfl" "oat\\b", "\\bdou" "ble\\b", "<cm" "ath>", "<ma" "th\\.h>",
                                        "std::sq" "rt\\b", "std::po" "w\\b", "std::lo" "g\\b", "std::ex" "p\\b",
                                        "\\bmp" "f_", "\\bmp" "fr", "\\bmpf" "_class\\b"};
  std::vector<std::regex> patterns;
  for (const auto& t : tokens) patterns.emplace_back(t);
  files = 0;
  for (const char* dir : {"src", "include", "tools", "tests"}) {
    for (const auto& entry : std::filesystem::recursive_directory_iterator(std::filesystem::path(SOURCE_ROOT) / dir)) {
      const auto ext = entry.path().extension().string();
      if (!entry.is_regular_file() || (ext != ".cpp" && ext != ".hpp" && ext != ".h")) continue;
      ++files;
      std::ifstream in(entry.path());
      std::string line;
      int lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        for (std::size_t k = 0; k < patterns.size(); ++k) {
          if (std::regex_search(line, patterns[k])) {
            v.require(false, entry.path().filename().string() + ":" + std::to_string(lineno));
          }
        }
      }
    }
  }
  v.require(files > 10, "too few files scanned");
  ms = elapsed_ms(start);
  return v;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const std::string& name, const Verdict& v, const std::string& extra) {
    std::cout << "ACCEPTANCE " << id << " " << (v.ok ? "PASS" : "FAIL") << ": " << name << " (" << extra << ")\n";
    for (const auto& n : v.notes) std::cout << "    " << n << "\n";
    failures += !v.ok;
  };
  auto guarded = [&](const std::function<Verdict()>& f) {
    try {
      return f();
    } catch (const std::exception& e) {
      Verdict v;
      v.require(false, std::string("exception: ") + e.what());
      return v;
    }
  };

  long long ms = 0;
  int count = 0;
  const auto timed = [&] { return std::to_string(ms) + " ms"; };
  Verdict v = guarded([&] { return worked_example(ms); });
  report(1, "worked-example certificate", v, timed());
  v = guarded([&] { return constructor_sweep(ms); });
  report(2, "constructor sweep, 110 pairs", v, timed());
  v = guarded([&] { return hilbert_symbols(ms); });
  report(3, "Hilbert product formula and local oracle", v, timed());
  v = guarded([&] { return lattice_invariants(ms); });
  report(4, "K3 lattice and complement invariants", v, timed());
  v = guarded([&] { return hyperbolicity(ms); });
  report(5, "hyperbolicity discrepancy sets", v, timed());
  v = guarded([&] { return no_minus_two(ms); });
  report(6, "no (-2)-vector certificates, n <= 200", v, timed());
  v = guarded([&] { return feasibility_grid(ms); });
  report(7, "feasibility grids p = 7, 5", v, timed());
  v = guarded([&] { return mutations(ms, count); });
  report(8, "mutation suite", v, std::to_string(count) + "/60 classified, " + timed());
  v = guarded([&] { return exactness_audit(ms, count); });
  report(9, "exact arithmetic audit", v, std::to_string(count) + " files, " + timed());
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
