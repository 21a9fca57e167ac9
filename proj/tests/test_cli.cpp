#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

int run(const std::string& args) {
  std::string command = std::string(EXPBASIS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("exit codes follow the documented contract") {
  CHECK(run("classify --n 4 --offsets 1,3,2,0 --masks 0b0101,0b1111,0b0101,0b1111") == 0);
  CHECK(run("classify --n 4 --offsets 0,2 --masks 0b0101,0b0101") == 1);
  CHECK(run("classify --n 4 --offsets junk --masks 0b01,0b10") == 2);
  CHECK(run("no-such-subcommand") == 2);
  CHECK(run("conjecture2 --n 4 --rho 0,2,1,3") == 0);
  CHECK(run("conjecture2 --n 4 --rho 0,1,2,3") == 1);
  CHECK(run("tri-classify --membership 12,23,13") == 0);
}

TEST_CASE("certificates written by the CLI verify and detect tampering") {
  const std::string cert = temp_path("expbasis_cli_cert.json");
  CHECK(run("conjecture2 --n 4 --rho 0,2,1,3 --out " + cert) == 0);
  CHECK(run("verify " + cert) == 0);

  // tamper: flip the pass flag
  {
    std::ifstream in(cert);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto pos = text.find("\"pass\": true");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::strlen("\"pass\": true"), "\"pass\": false");
    std::ofstream out(cert);
    out << text;
  }
  CHECK(run("verify " + cert) == 1);
  CHECK(run("verify " + temp_path("missing_cert.json")) == 2);
  std::filesystem::remove(cert);
}

TEST_CASE("mask files and interval files feed the subcommands") {
  const std::string mask_file = temp_path("expbasis_cli_masks.txt");
  {
    std::ofstream out(mask_file);
    out << "1010\n1111\n1010\n1111\n";  // position j = cell j
  }
  CHECK(run("classify --n 4 --offsets 1,3,2,0 --masks-file " + mask_file) == 0);
  std::filesystem::remove(mask_file);

  const std::string sets_file = temp_path("expbasis_cli_sets.txt");
  {
    std::ofstream out(sets_file);
    out << "0..1/2\n1/3..1\n";
  }
  const std::string cert = temp_path("expbasis_cli_corollary.json");
  CHECK(run("corollary --sets-file " + sets_file + " --out " + cert) == 0);
  CHECK(run("verify " + cert) == 0);
  std::filesystem::remove(sets_file);
  std::filesystem::remove(cert);
}

TEST_CASE("sampling demo writes report and spectra") {
  const std::string report = temp_path("expbasis_cli_report.csv");
  const std::string spectrum = temp_path("expbasis_cli_spectrum.csv");
  const std::string recon = temp_path("expbasis_cli_recon.csv");
  CHECK(run("sampling-demo --n 4 --masks 0b0101,0b1111,0b0101,0b1111 --rho 1,3,2,0 "
            "--truncation 32,128 --seed 7 --report-out " +
            report + " --spectrum-out " + spectrum + " --recon-out " + recon) == 0);
  {
    std::ifstream in(report);
    std::string header;
    std::getline(in, header);
    CHECK(header == "mtrunc,relative_error");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) ++rows;
    CHECK(rows == 2);
  }
  // the exported spectrum feeds back in unchanged
  CHECK(run("sampling-demo --n 4 --masks 0b0101,0b1111,0b0101,0b1111 --rho 1,3,2,0 "
            "--truncation 32 --spectrum-csv " +
            spectrum) == 0);
  CHECK(std::filesystem::file_size(recon) > 0);
  std::filesystem::remove(report);
  std::filesystem::remove(spectrum);
  std::filesystem::remove(recon);
}

TEST_CASE("reproduce and table export") {
  CHECK(run("reproduce ex1-construct") == 0);
  CHECK(run("reproduce bogus-fixture") == 2);

  const std::string table = temp_path("expbasis_cli_table.csv");
  CHECK(run("tri-classify --table-out " + table) == 0);
  std::ifstream in(table);
  std::string header;
  std::getline(in, header);
  CHECK(header == "branch,L1,L2,L3,case,k");
  std::filesystem::remove(table);
}
