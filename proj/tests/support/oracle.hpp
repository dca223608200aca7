#pragma once

// Brute-force reference answers, written from the model definitions alone and
// sharing no code with the engine, graph or metrics modules.

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <utility>

#include "fdo/core.hpp"

namespace oracle {

using Pair = std::pair<std::string, std::string>;  // (fdo pid, operation pid)

// Every (f, o) pair decided by direct inspection of the records. `key_only`
// ignores value constraints on required inputs.
std::set<Pair> relation(const fdo::Ecosystem& eco, bool key_only = false);

// Instantiated attributes lying on some f -> o association, each counted once
// per record it sits in (attribute model read by key presence).
std::uint64_t association_attributes(const fdo::Ecosystem& eco);

std::set<Pair> as_pairs(const std::set<std::pair<fdo::Pid, fdo::Pid>>& rel);

// Removes itself on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "fdo");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& sub) const { return path_ / sub; }

 private:
  std::filesystem::path path_;
};

// Runs a shell command, returning its exit status and captured stdout.
struct RunResult {
  int status = -1;
  std::string out;
};
RunResult run(const std::string& command);

}  // namespace oracle
