#pragma once

// Helpers for driving the installed command-line binary from tests via popen.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace treetopo::testing {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

inline CliResult run_cli(const std::string& args, const std::string& env_assignments = "") {
  std::string cmd = (env_assignments.empty() ? "" : "env " + env_assignments + " ") +
                    std::string(TREETOPO_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  CliResult result;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// A tree description written to a temporary file for the binary to load.
class TreeFile {
 public:
  explicit TreeFile(const std::string& content) {
    path_ = (std::filesystem::temp_directory_path() /
             ("treetopo_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++) + ".tree"))
                .string();
    std::ofstream out(path_, std::ios::binary);
    out << content;
  }

  TreeFile(const TreeFile&) = delete;
  TreeFile& operator=(const TreeFile&) = delete;
  ~TreeFile() { std::filesystem::remove(path_); }

  const std::string& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::string path_;
};

inline const std::string& y_tree_text() {
  static const std::string text =
      "vertex r root\n"
      "vertex v\n"
      "vertex a\n"
      "vertex b\n"
      "edge r v 1\n"
      "edge v a 1\n"
      "edge v b 2\n";
  return text;
}

}  // namespace treetopo::testing
