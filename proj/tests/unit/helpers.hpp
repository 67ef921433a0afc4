#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "core/error.hpp"

namespace testutil {

inline std::filesystem::path data_dir() {
  return std::filesystem::path(XLT_TEST_DATA_DIR);
}

inline std::string data_file(const std::string& name) {
  return (data_dir() / name).string();
}

namespace detail {
inline std::filesystem::path unique_temp_path() {
  static std::atomic<unsigned> counter{0};
  return std::filesystem::temp_directory_path() /
         ("xltrace_test_" + std::to_string(::getpid()) + "_" +
          std::to_string(counter.fetch_add(1)));
}
}  // namespace detail

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  const std::filesystem::path path;

  TempDir() : path(detail::unique_temp_path()) {
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path / name).string(); }
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void spit(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

// Message of the xlt::Error thrown by fn; empty string if nothing threw.
template <typename Fn>
std::string error_message(Fn&& fn) {
  try {
    fn();
  } catch (const xlt::Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace testutil
