// Proves every symbolic family in the catalog.  By default the stated
// exceptions are assumed and no further exception may turn up.  With
// --discover they are found instead and must equal the stated ones; that
// run takes about half an hour on one core.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "fracpow/format.hpp"
#include "fracpow/symbolic.hpp"
#include "oracles.hpp"

using namespace fracpow;

int main(int argc, char** argv) {
  SymOptions opt;
  opt.jobs                = std::max(1u, std::thread::hardware_concurrency());
  opt.discover_exceptions = argc > 1 && std::string(argv[1]) == "--discover";
  int failed = 0;
  for (auto const& path : oracle::catalog_files(FRACPOW_TEST_CATALOG)) {
    std::string text = read_text(path);
    if (!oracle::is_symbolic_file(text)) {
      continue;
    }
    auto m  = parse_symbolic(text);
    auto t0 = std::chrono::steady_clock::now();
    SymbolicProof p;
    std::string   error;
    try {
      p = sym_verify_free(m, opt);
    } catch (std::exception const& e) {
      error = e.what();
    }
    double t  = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto   ex = p.exceptions;
    auto   st = opt.discover_exceptions ? m.exceptions : std::vector<Rational>{};
    std::sort(ex.begin(), ex.end());
    std::sort(st.begin(), st.end());
    bool ok = error.empty() && p.status == Status::proved && ex == st;
    failed += ok ? 0 : 1;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", t);
    std::cout << (ok ? "ok   " : "FAIL ") << m.name << "  l = " << p.ell.str() << ", m_max = " << p.m_max << ", "
              << p.subinterval_count() << " subintervals, " << buf << (error.empty() ? "" : "  " + error)
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
