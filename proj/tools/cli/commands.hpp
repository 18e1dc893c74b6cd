#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace transport1d::cli {

// Files produced by a command. Nothing is written until every target has been
// checked against the overwrite policy; each file goes through a temp + rename.
class OutputSet {
public:
    void add(std::filesystem::path path, std::string content);
    // Throws InvalidArgument if a target exists and force is false.
    void commit(bool force) const;
    const std::vector<std::filesystem::path>& paths() const noexcept { return paths_; }

private:
    std::vector<std::filesystem::path> paths_;
    std::vector<std::string> contents_;
};

void write_atomic(const std::filesystem::path& path, const std::string& content);

int command_run(const RunConfig& cfg, std::ostream& out);
int command_verify(const RunConfig& cfg, std::ostream& out);
int command_compare(const RunConfig& cfg, std::ostream& out);
int command_traces(const RunConfig& cfg, std::ostream& out);
int dispatch(const RunConfig& cfg, std::ostream& out);

// Parses, dispatches and maps errors to exit codes:
// 0 success, 1 verification failure, 2 usage or config error, 3 numerical failure.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace transport1d::cli
