#include "hqr_cli/cli.hpp"

#include "hqr/numerics.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

namespace hqr::cli {

namespace {

// Writes next to the target and renames, so readers never see a partial file.
void write_atomically(const std::filesystem::path& target, const std::string& text) {
  std::random_device rd;
  std::filesystem::path tmp = target;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::invalid_argument("--out: cannot write '" + target.string() + "'");
    f << text;
    f.flush();
    if (!f) {
      f.close();
      std::filesystem::remove(tmp);
      throw std::invalid_argument("--out: write failed for '" + target.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::invalid_argument("--out: cannot replace '" + target.string() + "': " + ec.message());
  }
}

}  // namespace

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  Document doc;
  try {
    doc = render(spec);
  } catch (const NumericalError& e) {
    err << "hqr: numerical failure: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "hqr: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "hqr: " << e.what() << '\n';
    return 1;
  }
  try {
    if (spec.output) {
      write_atomically(*spec.output, doc.text);
    } else {
      out << doc.text;
      out.flush();
    }
  } catch (const std::exception& e) {
    err << "hqr: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunSpec spec;
  try {
    spec = parse(args);
  } catch (const UsageError& e) {
    if (std::string(e.what()).empty()) {
      out << e.usage();
      return 0;
    }
    err << "hqr: " << e.what() << '\n';
    if (!e.usage().empty()) err << e.usage();
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "hqr: " << e.what() << '\n';
    return 2;
  }
  return run(spec, out, err);
}

}  // namespace hqr::cli
