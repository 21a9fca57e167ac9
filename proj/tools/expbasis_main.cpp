// Command-line frontend for the exponential-basis toolkit. Talks to the
// shared library exclusively through the C API in expbasis.h; certificate
// JSON is parsed here only to extract report blocks for file export.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "expbasis.h"

namespace {

struct CertGuard {
  eb_certificate* cert = nullptr;
  ~CertGuard() { eb_certificate_free(cert); }
};

int finish(eb_status status, const CertGuard& guard, const std::string& out_path) {
  if (status > EB_NEGATIVE) {
    std::cerr << "error (" << eb_status_name(status) << "): " << eb_last_error() << "\n";
    return 2;
  }
  if (guard.cert) {
    std::cout << eb_certificate_summary(guard.cert) << "\n";
    if (!out_path.empty()) {
      eb_status save = eb_certificate_save(guard.cert, out_path.c_str());
      if (save != EB_OK) {
        std::cerr << "error (" << eb_status_name(save) << "): " << eb_last_error() << "\n";
        return 2;
      }
      std::cout << "certificate written to " << out_path << "\n";
    }
  }
  return status == EB_OK ? 0 : 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw CLI::ValidationError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Mask files: one mask per line, characters '0'/'1', position j = cell j.
std::string masks_from_file(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::string csv;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.size() > 64) throw CLI::ValidationError("mask rows limited to 64 cells");
    unsigned long long bits = 0;
    for (std::size_t j = 0; j < line.size(); ++j) {
      if (line[j] == '1')
        bits |= 1ull << j;
      else if (line[j] != '0')
        throw CLI::ValidationError("mask lines must contain only '0'/'1'");
    }
    if (!csv.empty()) csv += ",";
    csv += std::to_string(bits);
  }
  if (csv.empty()) throw CLI::ValidationError("empty mask file: " + path);
  return csv;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out.good()) throw CLI::ValidationError("cannot write file: " + path);
  out << text;
}

nlohmann::json cert_results(const CertGuard& guard) {
  return nlohmann::json::parse(std::string(eb_certificate_json(guard.cert)))
      .value("results", nlohmann::json::object());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riesz bases of complex exponentials with restricted supports: "
               "construction, classification, conjecture scans, certification"};
  app.set_version_flag("--version", eb_version());
  app.require_subcommand(1);

  long long n = 0;
  std::string offsets, masks, masks_file, cells, rho, out_path, mode = "exhaustive";
  std::string strategy = "exhaustive", checkpoint, resume, sets_file, membership;
  std::string intervals, freqs, id, cert_path, table_out, report_out, spectrum_in;
  std::string truncation = "2048";
  double tolerance = 0.0;
  bool exact = false;
  int threads = 0, refine = 2;
  unsigned long long seed = 1, checkpoint_every = 0, budget = 0;

  auto add_masks = [&](CLI::App* cmd) {
    cmd->add_option("--masks", masks, "comma-separated bitmask literals (0b0101 or decimal)");
    cmd->add_option("--masks-file", masks_file,
                    "file with one mask per line, chars '0'/'1', position j = cell j");
  };
  auto resolve_masks = [&]() {
    if (!masks_file.empty()) return masks_from_file(masks_file);
    return masks;
  };

  auto* classify = app.add_subcommand("classify", "classify a masked exponential system");
  classify->add_option("--n", n, "grid modulus N")->required();
  classify->add_option("--offsets", offsets, "comma-separated rational offsets c_k")->required();
  add_masks(classify);
  classify->add_option("--tolerance", tolerance, "singularity threshold scale");
  classify->add_flag("--exact", exact, "require the exact root-of-unity verdict");
  classify->add_option("--out", out_path, "write the certificate here");

  auto* construct = app.add_subcommand("construct", "find a frequency assignment (Theorem-style)");
  construct->add_option("--n", n, "grid modulus N")->required();
  construct->add_option("--cells", cells, "distinguished cell of each set")->required();
  add_masks(construct);
  construct->add_option("--out", out_path, "write the certificate here");

  auto* corollary = app.add_subcommand("corollary", "full pipeline from interval descriptions");
  corollary->add_option("--sets-file", sets_file,
                        "one set per line, intervals \"p/q..r/s\" separated by commas")
      ->required();
  corollary->add_option("--out", out_path, "write the certificate here");

  auto* lemma = app.add_subcommand("lemma-search", "permutation search for the masked determinant bound");
  lemma->add_option("--n", n, "grid modulus N")->required();
  lemma->add_option("--offsets", offsets, "row frequencies c_k")->required();
  add_masks(lemma);
  lemma->add_option("--mode", mode, "exhaustive | first_feasible");
  lemma->add_option("--out", out_path, "write the certificate here");

  auto* conj1 = app.add_subcommand("conjecture1", "scan diagonal-one masks for invertibility");
  conj1->add_option("--n", n, "matrix size N")->required();
  conj1->add_option("--rho", rho, "fixed permutation (searches all when omitted)");
  conj1->add_option("--strategy", strategy, "exhaustive | randomized_refute");
  conj1->add_option("--seed", seed, "seed for randomized_refute");
  conj1->add_option("--threads", threads, "worker count (0 = available parallelism)");
  conj1->add_option("--checkpoint", checkpoint, "write periodic checkpoints here");
  conj1->add_option("--checkpoint-every", checkpoint_every, "masks between checkpoints");
  conj1->add_option("--resume", resume, "continue from a checkpoint file");
  conj1->add_option("--budget", budget, "stop after this many masks (0 = run to completion)");
  conj1->add_option("--out", out_path, "write the certificate here");

  auto* conj2 = app.add_subcommand("conjecture2", "check all principal submatrices");
  conj2->add_option("--n", n, "matrix size N")->required();
  conj2->add_option("--rho", rho, "fixed permutation (searches all when omitted)");
  conj2->add_option("--out", out_path, "write the certificate here");

  long long p = 0;
  auto* hierarchy = app.add_subcommand("hierarchy", "non-integer hierarchical frequency check");
  hierarchy->add_option("--n", n, "grid modulus N")->required();
  hierarchy->add_option("--p", p, "prime P > N")->required();
  hierarchy->add_option("--out", out_path, "write the certificate here");

  auto* tri = app.add_subcommand("tri-classify", "three-interval membership case classifier");
  tri->add_option("--membership", membership, "e.g. \"12,23,13\" (omit for the 64-case table)");
  tri->add_option("--table-out", table_out, "write the 64-case table as CSV");
  tri->add_option("--out", out_path, "write the certificate here");

  auto* cross = app.add_subcommand("cross-check", "classify an interval/coset configuration");
  cross->add_option("--n", n, "grid modulus N")->required();
  cross->add_option("--intervals", intervals, "cells per interval, ';' between intervals")
      ->required();
  cross->add_option("--freqs", freqs, "offsets per interval, ';' between intervals")->required();
  cross->add_option("--membership", membership, "digit groups, e.g. \"12,23,13\"")->required();
  cross->add_option("--out", out_path, "write the certificate here");

  auto* sampling = app.add_subcommand("sampling-demo", "multi-channel sampling reconstruction");
  sampling->add_option("--n", n, "channel count / grid modulus N")->required();
  add_masks(sampling);
  sampling->add_option("--rho", rho, "channel frequency assignment (searched when omitted)");
  sampling->add_option("--truncation", truncation, "comma-separated truncation list");
  sampling->add_option("--seed", seed, "random spectrum seed");
  sampling->add_option("--refine", refine, "spectrum refinement factor");
  sampling->add_option("--spectrum-csv", spectrum_in, "read the input spectrum from CSV");
  sampling->add_option("--report-out", report_out, "write (mtrunc, relative error) CSV");
  std::string spectrum_out, recon_out;
  sampling->add_option("--spectrum-out", spectrum_out, "write the input spectrum as CSV");
  sampling->add_option("--recon-out", recon_out, "write the reconstructed spectrum as CSV");
  sampling->add_option("--out", out_path, "write the certificate here");

  auto* reproduce = app.add_subcommand("reproduce", "rebuild and re-verify a published fixture");
  reproduce->add_option("id", id, "fixture id (omit to list)");
  reproduce->add_option("--out", out_path, "write the certificate here");

  auto* verify = app.add_subcommand("verify", "re-run a certificate from its parameters");
  verify->add_option("certificate", cert_path, "certificate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    std::cerr << app.help() << "\n";
    return 2;
  }

  try {
    CertGuard guard;
    if (classify->parsed()) {
      eb_status s = eb_classify(n, offsets.c_str(), resolve_masks().c_str(), tolerance,
                                exact ? 1 : -1, &guard.cert);
      return finish(s, guard, out_path);
    }
    if (construct->parsed()) {
      eb_status s = eb_construct(n, cells.c_str(), resolve_masks().c_str(), &guard.cert);
      return finish(s, guard, out_path);
    }
    if (corollary->parsed()) {
      eb_status s = eb_corollary(read_file(sets_file).c_str(), &guard.cert);
      return finish(s, guard, out_path);
    }
    if (lemma->parsed()) {
      eb_status s = eb_lemma_search(n, offsets.c_str(), resolve_masks().c_str(), mode.c_str(),
                                    &guard.cert);
      return finish(s, guard, out_path);
    }
    if (conj1->parsed()) {
      eb_status s = eb_conjecture1(n, rho.empty() ? nullptr : rho.c_str(), strategy.c_str(),
                                   seed, threads, checkpoint.empty() ? nullptr : checkpoint.c_str(),
                                   checkpoint_every, resume.empty() ? nullptr : resume.c_str(),
                                   budget, &guard.cert);
      return finish(s, guard, out_path);
    }
    if (conj2->parsed()) {
      eb_status s = eb_conjecture2(n, rho.empty() ? nullptr : rho.c_str(), &guard.cert);
      return finish(s, guard, out_path);
    }
    if (hierarchy->parsed()) {
      eb_status s = eb_hierarchy(n, p, &guard.cert);
      return finish(s, guard, out_path);
    }
    if (tri->parsed()) {
      eb_status s = eb_tri_classify(membership.empty() ? nullptr : membership.c_str(),
                                    &guard.cert);
      if (s <= EB_NEGATIVE && !table_out.empty()) {
        nlohmann::json results = cert_results(guard);
        if (results.contains("table_csv")) {
          write_text(table_out, results.at("table_csv").get<std::string>());
          std::cout << "case table written to " << table_out << "\n";
        } else {
          std::cerr << "note: --table-out needs the full table (omit --membership)\n";
        }
      }
      return finish(s, guard, out_path);
    }
    if (cross->parsed()) {
      eb_status s = eb_cross_check(n, intervals.c_str(), freqs.c_str(), membership.c_str(),
                                   &guard.cert);
      return finish(s, guard, out_path);
    }
    if (sampling->parsed()) {
      std::string spectrum_text = spectrum_in.empty() ? "" : read_file(spectrum_in);
      eb_status s = eb_sampling_demo(n, resolve_masks().c_str(),
                                     rho.empty() ? nullptr : rho.c_str(), truncation.c_str(),
                                     seed, refine,
                                     spectrum_text.empty() ? nullptr : spectrum_text.c_str(),
                                     &guard.cert);
      if (s <= EB_NEGATIVE) {
        nlohmann::json results = cert_results(guard);
        if (!report_out.empty()) {
          std::ostringstream csv;
          csv << "mtrunc,relative_error\n";
          for (const auto& row : results.value("errors", nlohmann::json::array()))
            csv << row.at("mtrunc").get<long>() << "," << row.at("error_rel").get<double>()
                << "\n";
          write_text(report_out, csv.str());
          std::cout << "report written to " << report_out << "\n";
        }
        if (!spectrum_out.empty()) {
          write_text(spectrum_out, results.value("spectrum_csv", std::string{}));
          std::cout << "spectrum written to " << spectrum_out << "\n";
        }
        if (!recon_out.empty()) {
          write_text(recon_out, results.value("reconstruction_csv", std::string{}));
          std::cout << "reconstruction written to " << recon_out << "\n";
        }
      }
      return finish(s, guard, out_path);
    }
    if (reproduce->parsed()) {
      if (id.empty()) {
        char* ids = nullptr;
        eb_status s = eb_fixture_ids(&ids);
        if (s != EB_OK) {
          std::cerr << "error: " << eb_last_error() << "\n";
          return 2;
        }
        std::string list(ids);
        eb_string_free(ids);
        for (std::size_t pos = 0, next = 0; pos <= list.size(); pos = next + 1) {
          next = list.find(',', pos);
          if (next == std::string::npos) next = list.size();
          std::cout << list.substr(pos, next - pos) << "\n";
          if (next == list.size()) break;
        }
        return 0;
      }
      eb_status s = eb_reproduce(id.c_str(), &guard.cert);
      return finish(s, guard, out_path);
    }
    if (verify->parsed()) {
      char* report = nullptr;
      eb_status s = eb_verify_file(cert_path.c_str(), &report);
      if (s > EB_NEGATIVE) {
        std::cerr << "error (" << eb_status_name(s) << "): " << eb_last_error() << "\n";
        return 2;
      }
      std::cout << (report ? report : "") << "\n";
      eb_string_free(report);
      return s == EB_OK ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
