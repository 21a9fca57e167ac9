#include "expbasis.h"

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "core/certificate.hpp"
#include "core/conjectures.hpp"
#include "core/errors.hpp"
#include "core/fixtures.hpp"
#include "core/grid.hpp"
#include "core/version.hpp"

using namespace expbasis;

struct eb_certificate {
  Certificate cert;
  std::string note;  // extra lines appended to the summary (reproduce reports)
  mutable std::string json_cache;
  mutable std::string kind_cache;
  mutable std::string summary_cache;
};

namespace {

thread_local std::string g_last_error;

eb_status status_from(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return EB_ERR_INVALID_ARGUMENT;
    case ErrorCode::shape: return EB_ERR_SHAPE;
    case ErrorCode::singular: return EB_ERR_SINGULAR;
    case ErrorCode::size_limit: return EB_ERR_SIZE_LIMIT;
    case ErrorCode::parse: return EB_ERR_PARSE;
    case ErrorCode::io: return EB_ERR_IO;
    case ErrorCode::unsupported: return EB_ERR_UNSUPPORTED;
    case ErrorCode::not_found: return EB_ERR_NOT_FOUND;
    case ErrorCode::verification: return EB_ERR_VERIFICATION;
    case ErrorCode::internal: return EB_ERR_INTERNAL;
  }
  return EB_ERR_INTERNAL;
}

template <typename Fn>
eb_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EB_ERR_INTERNAL;
  }
}

eb_certificate* wrap(Certificate cert, std::string note = {}) {
  auto* handle = new eb_certificate;
  handle->cert = std::move(cert);
  handle->note = std::move(note);
  return handle;
}

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

// Bitmask literals: "0b0101" (binary) or decimal; bit j corresponds to cell j.
std::vector<std::vector<int>> parse_masks_csv(const std::string& text) {
  std::vector<std::vector<int>> masks;
  std::string item;
  std::vector<std::string> items;
  for (char ch : text) {
    if (ch == ',') {
      items.push_back(item);
      item.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      item += ch;
    }
  }
  items.push_back(item);
  for (const auto& entry : items) {
    require(!entry.empty(), ErrorCode::parse, "empty mask entry");
    std::uint64_t bits = 0;
    try {
      if (entry.size() > 2 && entry[0] == '0' && (entry[1] == 'b' || entry[1] == 'B'))
        bits = std::stoull(entry.substr(2), nullptr, 2);
      else
        bits = std::stoull(entry, nullptr, 10);
    } catch (const std::exception&) {
      fail(ErrorCode::parse, "malformed mask literal: " + entry);
    }
    std::vector<int> cells;
    for (int j = 0; j < 64; ++j)
      if ((bits >> j) & 1ull) cells.push_back(j);
    masks.push_back(std::move(cells));
  }
  return masks;
}

nlohmann::json masks_to_bitlists(const std::vector<std::vector<int>>& masks, std::int64_t n) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& mask : masks) {
    nlohmann::json bits = nlohmann::json::array();
    for (std::int64_t j = 0; j < n; ++j) bits.push_back(0);
    for (int c : mask) {
      require(c >= 0 && c < n, ErrorCode::invalid_argument,
              "mask bit outside Z_N: " + std::to_string(c));
      bits[static_cast<std::size_t>(c)] = 1;
    }
    out.push_back(bits);
  }
  return out;
}

nlohmann::json offsets_csv_to_json(const std::string& text) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& o : parse_offsets(text)) out.push_back(o.str());
  return out;
}

std::optional<std::vector<int>> optional_int_list(const char* text) {
  if (text == nullptr || *text == '\0') return std::nullopt;
  return parse_int_list(text);
}

int effective_threads(int threads) {
  if (const char* env = std::getenv("EXPBASIS_THREADS")) {
    try {
      int value = std::stoi(env);
      if (value > 0) return value;
    } catch (const std::exception&) {
    }
  }
  return threads;
}

// "12,23,13" -> [[1,2],[2,3],[1,3]]
std::vector<std::vector<int>> parse_digit_groups(const std::string& text) {
  std::vector<std::vector<int>> groups;
  std::vector<int> current;
  for (char ch : text) {
    if (ch == ',') {
      groups.push_back(current);
      current.clear();
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      current.push_back(ch - '0');
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      fail(ErrorCode::parse, std::string("unexpected character in membership: ") + ch);
    }
  }
  groups.push_back(current);
  return groups;
}

std::vector<std::string> split_groups(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string current;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  out.push_back(current);
  return out;
}

}  // namespace

extern "C" {

const char* eb_version(void) { return kToolVersion; }

const char* eb_status_name(eb_status status) {
  switch (status) {
    case EB_OK: return "ok";
    case EB_NEGATIVE: return "negative";
    case EB_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case EB_ERR_SHAPE: return "shape-error";
    case EB_ERR_SINGULAR: return "singular-matrix";
    case EB_ERR_SIZE_LIMIT: return "size-limit";
    case EB_ERR_PARSE: return "parse-error";
    case EB_ERR_IO: return "io-error";
    case EB_ERR_UNSUPPORTED: return "unsupported-configuration";
    case EB_ERR_NOT_FOUND: return "not-found";
    case EB_ERR_VERIFICATION: return "verification-error";
    case EB_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* eb_last_error(void) { return g_last_error.c_str(); }

const char* eb_certificate_json(const eb_certificate* cert) {
  if (!cert) return "";
  cert->json_cache = cert->cert.to_text();
  return cert->json_cache.c_str();
}

const char* eb_certificate_kind(const eb_certificate* cert) {
  if (!cert) return "";
  cert->kind_cache = cert->cert.kind();
  return cert->kind_cache.c_str();
}

const char* eb_certificate_summary(const eb_certificate* cert) {
  if (!cert) return "";
  cert->summary_cache = summarize(cert->cert);
  if (!cert->note.empty()) cert->summary_cache += "\n" + cert->note;
  return cert->summary_cache.c_str();
}

int eb_certificate_positive(const eb_certificate* cert) {
  return cert && cert->cert.positive() ? 1 : 0;
}

eb_status eb_certificate_save(const eb_certificate* cert, const char* path) {
  return guarded([&]() -> eb_status {
    require(cert != nullptr && path != nullptr, ErrorCode::invalid_argument,
            "null certificate or path");
    cert->cert.save(path);
    return EB_OK;
  });
}

void eb_certificate_free(eb_certificate* cert) { delete cert; }

void eb_string_free(char* text) { std::free(text); }

eb_status eb_classify(int64_t n, const char* offsets, const char* masks, double tolerance,
                      int exact_mode, eb_certificate** out) {
  return guarded([&]() -> eb_status {
    require(out && offsets && masks, ErrorCode::invalid_argument, "null argument");
    auto mask_cells = parse_masks_csv(masks);
    nlohmann::json params;
    params["n"] = n;
    params["offsets"] = offsets_csv_to_json(offsets);
    params["masks"] = masks_to_bitlists(mask_cells, n);
    if (tolerance > 0) params["tolerance"] = tolerance;
    if (exact_mode == 1) {
      for (const auto& o : parse_offsets(offsets))
        require(o.is_integer(), ErrorCode::unsupported,
                "exact verification requires integer offsets");
    }
    Certificate cert = make_certificate("classification", params);
    *out = wrap(std::move(cert));
    return (*out)->cert.positive() ? EB_OK : EB_NEGATIVE;
  });
}

eb_status eb_construct(int64_t n, const char* cells, const char* masks, eb_certificate** out) {
  return guarded([&]() -> eb_status {
    require(out && cells && masks, ErrorCode::invalid_argument, "null argument");
    nlohmann::json params;
    params["n"] = n;
    params["cells"] = parse_int_list(cells);
    params["masks"] = masks_to_bitlists(parse_masks_csv(masks), n);
    Certificate cert = make_certificate("construction", params);
    *out = wrap(std::move(cert));
    return (*out)->cert.positive() ? EB_OK : EB_NEGATIVE;
  });
}

eb_status eb_corollary(const char* sets_text, eb_certificate** out) {
  return guarded([&]() -> eb_status {
    require(out && sets_text, ErrorCode::invalid_argument, "null argument");
    auto sets = parse_support_sets(sets_text);
    nlohmann::json sets_json = nlohmann::json::array();
    for (const auto& set : sets) {
      nlohmann::json one = nlohmann::json::array();
      for (const auto& iv : set) one.push_back(iv.lo.str() + ".." + iv.hi.str());
      sets_json.push_back(one);
    }
    Certificate cert = make_certificate("corollary", {{"sets", sets_json}});
    *out = wrap(std::move(cert));
    return (*out)->cert.positive() ? EB_OK : EB_NEGATIVE;
  });
}

eb_status eb_lemma_search(int64_t n, const char* offsets, const char* masks, const char* mode,
                          eb_certificate** out) {
  return guarded([&]() -> eb_status {
    require(out && offsets && masks, ErrorCode::invalid_argument, "null argument");
    nlohmann::json params;
    params["n"] = n;
    params["offsets"] = offsets_csv_to_json(offsets);
    params["masks"] = masks_to_bitlists(parse_masks_csv(masks), n);
    params["mode"] = (mode && *mode) ? mode : "exhaustive";
    Certificate cert = make_certificate("lemma", params);
    *out = wrap(std::move(cert));
    return (*out)->cert.positive() ? EB_OK : EB_NEGATIVE;
  });
}

eb_status eb_conjecture1(int64_t n, const char* rho, const char* strategy, uint64_t seed,
                         int threads, const char* checkpoint_path, uint64_t checkpoint_every,
                         const char* resume_path, uint64_t mask_budget, eb_certificate** out) {
  return guarded([&]() -> eb_status {
    require(out, ErrorCode::invalid_argument, "null output");
    Conjecture1Options options;
    options.rho = optional_int_list(rho);
    options.strategy = (strategy && *strategy) ? strategy : "exhaustive";
    options.seed = seed;
    options.threads = effective_threads(threads);
    options.mask_budget = mask_budget;
    if (checkpoint_path && *checkpoint_path) options.checkpoint_path = checkpoint_path;
    options.checkpoint_every = checkpoint_every;
    if (resume_path && *resume_path) options.resume = load_checkpoint(resume_path);

    auto start = std::chrono::steady_clock::now();
    ScanVerdict verdict = conjecture1_scan(n, options);
    double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!verdict.completed) {
      Certificate cp;
      cp.doc = checkpoint_to_json(*verdict.checkpoint);
      *out = wrap(std::move(cp), "scan interrupted; resume with the checkpoint file");
      return EB_OK;
    }

    nlohmann::json params;
    params["conjecture"] = "one";
    params["n"] = n;
    params["rho"] = options.rho ? nlohmann::json(*options.rho) : nlohmann::json();
    params["strategy"] = options.strategy;
    params["seed"] = seed;
    Certificate cert = assemble_certificate("conjecture_scan", params,
                                            scan_results_json(verdict), wall);
    *out = wrap(std::move(cert));
    return verdict.pass ? EB_OK : EB_NEGATIVE;
  });
}

eb_status eb_conjecture2(int64_t n, const char* rho, eb_certificate** out) {
  return guarded([&]() -> eb_status {
    require(out, ErrorCode::invalid_argument, "null output");
    auto fixed = optional_int_list(rho);
    auto start = std::chrono::steady_clock::now();
    ScanVerdict verdict = conjecture2_scan(n, fixed);
    double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    nlohmann::json params;
    params["conjecture"] = "two";
    params["n"] = n;
    params["rho"] = fixed ? nlohmann::json(*fixed) : nlohmann::json();
    Certificate cert = assemble_certificate("conjecture_scan", params,
                                            scan_results_json(verdict), wall);
    *out = wrap(std::move(cert));
    return verdict.pass ? EB_OK : EB_NEGATIVE;
  });
}

eb_status eb_hierarchy(int64_t n, int64_t p, eb_certificate** out) {
  return guarded([&]() -> eb_status {
    require(out, ErrorCode::invalid_argument, "null output");
    Certificate cert =
        make_certificate("conjecture_scan", {{"conjecture", "hierarchy"}, {"n", n}, {"p", p}});
    *out = wrap(std::move(cert));
    return (*out)->cert.positive() ? EB_OK : EB_NEGATIVE;
  });
}

eb_status eb_tri_classify(const char* membership, eb_certificate** out) {
  return guarded([&]() -> eb_status {
    require(out, ErrorCode::invalid_argument, "null output");
    nlohmann::json params;
    if (membership && *membership)
      params["membership"] = parse_digit_groups(membership);
    else
      params["membership"] = "all";
    Certificate cert = make_certificate("tri_interval", params);
    *out = wrap(std::move(cert));
    return EB_OK;
  });
}

eb_status eb_cross_check(int64_t n, const char* intervals, const char* freqs,
                         const char* membership, eb_certificate** out) {
  return guarded([&]() -> eb_status {
    require(out && intervals && freqs && membership, ErrorCode::invalid_argument,
            "null argument");
    nlohmann::json interval_lists = nlohmann::json::array();
    for (const auto& group : split_groups(intervals, ';')) {
      nlohmann::json bits = nlohmann::json::array();
      for (std::int64_t j = 0; j < n; ++j) bits.push_back(0);
      if (!group.empty())
        for (int c : parse_int_list(group)) {
          require(c >= 0 && c < n, ErrorCode::invalid_argument, "interval cell outside Z_N");
          bits[static_cast<std::size_t>(c)] = 1;
        }
      interval_lists.push_back(bits);
    }
    nlohmann::json freq_lists = nlohmann::json::array();
    for (const auto& group : split_groups(freqs, ';')) {
      if (group.empty())
        freq_lists.push_back(nlohmann::json::array());
      else
        freq_lists.push_back(offsets_csv_to_json(group));
    }
    nlohmann::json params;
    params["n"] = n;
    params["intervals"] = interval_lists;
    params["freqs"] = freq_lists;
    params["membership"] = parse_digit_groups(membership);
    Certificate cert = make_certificate("cross_check", params);
    *out = wrap(std::move(cert));
    return (*out)->cert.positive() ? EB_OK : EB_NEGATIVE;
  });
}

eb_status eb_sampling_demo(int64_t n, const char* masks, const char* rho, const char* mtruncs,
                           uint64_t seed, int refine, const char* spectrum_csv,
                           eb_certificate** out) {
  return guarded([&]() -> eb_status {
    require(out && masks, ErrorCode::invalid_argument, "null argument");
    nlohmann::json params;
    params["n"] = n;
    params["masks"] = masks_to_bitlists(parse_masks_csv(masks), n);
    auto fixed = optional_int_list(rho);
    params["rho"] = fixed ? nlohmann::json(*fixed) : nlohmann::json();
    params["mtruncs"] = (mtruncs && *mtruncs) ? nlohmann::json(parse_int_list(mtruncs))
                                              : nlohmann::json::array({2048});
    if (spectrum_csv && *spectrum_csv) {
      params["spectrum_csv"] = spectrum_csv;
    } else {
      params["seed"] = seed;
      params["refine"] = refine >= 1 ? refine : 2;
    }
    Certificate cert = make_certificate("sampling_report", params);
    *out = wrap(std::move(cert));
    return EB_OK;
  });
}

eb_status eb_reproduce(const char* id, eb_certificate** out) {
  return guarded([&]() -> eb_status {
    require(out && id, ErrorCode::invalid_argument, "null argument");
    ReproduceOutcome outcome = reproduce_known(id);
    std::string note = outcome.expectations_met
                           ? "published expectations reproduced"
                           : "expectation mismatches:\n" + outcome.report;
    *out = wrap(std::move(outcome.certificate), std::move(note));
    return outcome.expectations_met ? EB_OK : EB_NEGATIVE;
  });
}

eb_status eb_fixture_ids(char** ids_csv) {
  return guarded([&]() -> eb_status {
    require(ids_csv, ErrorCode::invalid_argument, "null output");
    std::string joined;
    for (const auto& id : fixture_ids()) {
      if (!joined.empty()) joined += ",";
      joined += id;
    }
    *ids_csv = dup_string(joined);
    return EB_OK;
  });
}

eb_status eb_verify_file(const char* path, char** report) {
  return guarded([&]() -> eb_status {
    require(path, ErrorCode::invalid_argument, "null path");
    Certificate cert = Certificate::load(path);
    VerifyOutcome outcome = verify_certificate(cert);
    if (report)
      *report = dup_string(outcome.ok ? "verified: results reproduced from parameters"
                                      : outcome.report);
    return outcome.ok ? EB_OK : EB_NEGATIVE;
  });
}

}  // extern "C"
