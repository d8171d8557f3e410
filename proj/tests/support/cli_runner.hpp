// Helpers for tests that drive the installed CLI binary: locate it, run it
// through the shell with captured streams, and parse its key=value outputs.
#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cli {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read '" + path + "'");
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string binary_path() {
  if (const char* env = std::getenv("TVQC_CLI")) {
    return env;
  }
#ifdef TVQC_CLI_PATH_FILE
  std::string path = read_file(TVQC_CLI_PATH_FILE);
  while (!path.empty() && (path.back() == '\n' || path.back() == '\r')) {
    path.pop_back();
  }
  return path;
#else
  throw std::runtime_error("set TVQC_CLI to the tvqc binary path");
#endif
}

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

// Runs the CLI with the given argument string inside work_dir; env_prefix
// can carry VAR=value assignments.
inline RunResult run(const std::string& work_dir, const std::string& args,
                     const std::string& env_prefix = "") {
  const std::string out_path = work_dir + "/.stdout";
  const std::string err_path = work_dir + "/.stderr";
  const std::string command = "cd '" + work_dir + "' && " + env_prefix + " '" +
                              binary_path() + "' " + args + " > '" + out_path +
                              "' 2> '" + err_path + "'";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

inline std::string make_temp_dir() {
  char templ[] = "/tmp/tvqc_test_XXXXXX";
  if (mkdtemp(templ) == nullptr) {
    throw std::runtime_error("mkdtemp failed");
  }
  return templ;
}

inline std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t eq = line.find('=');
    if (eq != std::string::npos) {
      kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
  }
  return kv;
}

}  // namespace cli
