#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "expbasis.h"

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

struct Handle {
  eb_certificate* cert = nullptr;
  ~Handle() { eb_certificate_free(cert); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(eb_version()) > 0);
  CHECK(std::string(eb_status_name(EB_OK)) == "ok");
  CHECK(std::string(eb_status_name(EB_ERR_SIZE_LIMIT)) == "size-limit");
}

TEST_CASE("classify through the C surface") {
  SUBCASE("a Riesz basis returns EB_OK") {
    Handle h;
    eb_status s = eb_classify(4, "1,3,2,0", "0b0101,0b1111,0b0101,0b1111", 0, -1, &h.cert);
    CHECK(s == EB_OK);
    CHECK(eb_certificate_positive(h.cert) == 1);
    CHECK(std::string(eb_certificate_kind(h.cert)) == "classification");
    CHECK(std::string(eb_certificate_json(h.cert)).find("riesz_basis") != std::string::npos);
  }

  SUBCASE("the 2x2 ones pattern returns EB_NEGATIVE") {
    Handle h;
    eb_status s = eb_classify(4, "0,2", "0b0101,0b0101", 0, -1, &h.cert);
    CHECK(s == EB_NEGATIVE);
    CHECK(eb_certificate_positive(h.cert) == 0);
  }

  SUBCASE("exact mode rejects non-integer offsets") {
    Handle h;
    eb_status s = eb_classify(4, "1/2,1", "0b01,0b10", 0, 1, &h.cert);
    CHECK(s == EB_ERR_UNSUPPORTED);
    CHECK(std::strlen(eb_last_error()) > 0);
  }

  SUBCASE("parse errors surface as EB_ERR_PARSE") {
    Handle h;
    CHECK(eb_classify(4, "1,junk", "0b01,0b10", 0, -1, &h.cert) == EB_ERR_PARSE);
  }
}

TEST_CASE("construct, save and verify a certificate file") {
  Handle h;
  eb_status s = eb_construct(4, "0,1,2,3", "0b0101,0b1111,0b0101,0b1111", &h.cert);
  REQUIRE(s == EB_OK);

  const std::string path = temp_path("expbasis_capi_construct.json");
  REQUIRE(eb_certificate_save(h.cert, path.c_str()) == EB_OK);

  char* report = nullptr;
  CHECK(eb_verify_file(path.c_str(), &report) == EB_OK);
  CHECK(std::string(report).find("verified") != std::string::npos);
  eb_string_free(report);

  // tamper with a numeric result and expect a mismatch
  {
    std::string text;
    {
      std::ifstream in(path);
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    auto pos = text.find("\"det_modulus\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::strlen("\"det_modulus\""), "\"det_modulus_x\"");
    // keep JSON valid by writing a fresh value under the original key
    nlohmann::json doc = nlohmann::json::parse(text);
    doc["results"]["det_modulus"] = 123.0;
    std::ofstream out(path);
    out << doc.dump(2);
  }
  report = nullptr;
  CHECK(eb_verify_file(path.c_str(), &report) == EB_NEGATIVE);
  CHECK(std::strlen(report) > 0);
  eb_string_free(report);

  // unreadable file
  CHECK(eb_verify_file(temp_path("missing_cert_zzz.json").c_str(), nullptr) == EB_ERR_IO);
  std::filesystem::remove(path);
}

TEST_CASE("scans and checkpoints through the C surface") {
  Handle witness;
  CHECK(eb_conjecture1(4, nullptr, "exhaustive", 1, 2, nullptr, 0, nullptr, 0,
                       &witness.cert) == EB_OK);
  CHECK(std::string(eb_certificate_json(witness.cert)).find("witness_rho") !=
        std::string::npos);

  const std::string cp = temp_path("expbasis_capi_checkpoint.json");
  Handle partial;
  CHECK(eb_conjecture1(4, "0,1,2,3", "exhaustive", 1, 1, cp.c_str(), 0, nullptr, 1000,
                       &partial.cert) == EB_OK);
  CHECK(std::string(eb_certificate_kind(partial.cert)) == "checkpoint");
  CHECK(eb_certificate_positive(partial.cert) == 0);

  Handle resumed;
  CHECK(eb_conjecture1(4, "0,1,2,3", "exhaustive", 1, 1, nullptr, 0, cp.c_str(), 0,
                       &resumed.cert) == EB_NEGATIVE);
  CHECK(std::string(eb_certificate_kind(resumed.cert)) == "conjecture_scan");
  std::filesystem::remove(cp);

  Handle c2;
  CHECK(eb_conjecture2(4, "0,2,1,3", &c2.cert) == EB_OK);
  Handle c2bad;
  CHECK(eb_conjecture2(4, "0,1,2,3", &c2bad.cert) == EB_NEGATIVE);
  Handle h5;
  CHECK(eb_hierarchy(4, 5, &h5.cert) == EB_OK);
  Handle hbad;
  CHECK(eb_hierarchy(4, 6, &hbad.cert) == EB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("remaining surfaces") {
  Handle tri;
  CHECK(eb_tri_classify("12,23,13", &tri.cert) == EB_OK);
  CHECK(std::string(eb_certificate_json(tri.cert)).find("case_star") != std::string::npos);

  Handle table;
  CHECK(eb_tri_classify(nullptr, &table.cert) == EB_OK);
  CHECK(std::string(eb_certificate_json(table.cert)).find("table_csv") != std::string::npos);

  Handle cross;
  CHECK(eb_cross_check(3, "0;1;2", "0;1;2", "12,23,13", &cross.cert) == EB_OK);

  Handle lemma;
  CHECK(eb_lemma_search(4, "1,2,3,4", "0b0101,0b1111,0b0101,0b1111", "exhaustive",
                        &lemma.cert) == EB_OK);

  Handle corollary;
  CHECK(eb_corollary("0..1/2\n1/3..1\n", &corollary.cert) == EB_OK);

  Handle sampling;
  CHECK(eb_sampling_demo(4, "0b0101,0b1111,0b0101,0b1111", "1,3,2,0", "32,128", 5, 2, nullptr,
                         &sampling.cert) == EB_OK);
  CHECK(std::string(eb_certificate_json(sampling.cert)).find("errors") != std::string::npos);

  char* ids = nullptr;
  CHECK(eb_fixture_ids(&ids) == EB_OK);
  std::string id_list(ids);
  eb_string_free(ids);
  CHECK(id_list.find("ex1-construct") != std::string::npos);

  Handle repro;
  CHECK(eb_reproduce("ex1-Aid-singular", &repro.cert) == EB_OK);
  CHECK(eb_reproduce("no-such-id", &repro.cert) == EB_ERR_NOT_FOUND);
}
