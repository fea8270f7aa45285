#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "baire/frame.hpp"

namespace baire::cli {

using json = nlohmann::ordered_json;

enum class Status { Ok, Fail, Error };
enum class Format { Human, Json };

struct Report {
  std::string command;
  Status status = Status::Ok;
  json payload = json::object();
  std::vector<std::string> diagnostics;
};

/// 0 ok, 1 fail, 2 error.
int exit_code(Status s);
const char* status_name(Status s);

/// Human output is one "key: value" line per payload leaf, with nested keys
/// joined by dots; json output is a single compact document.
std::string render_report(const Report& r, Format format);

/// `{"worlds": [...], "edges": [[w, v], ...], "auto_close": true}`
Frame frame_from_json(const json& j, const FrameLimits& limits = {});

struct Outcome {
  std::string text;
  int exit_code = 0;
};

/// Parses argv (program name first), runs the subcommand and renders the
/// report. Help requests produce the help text with exit code 0.
Outcome run(const std::vector<std::string>& argv);

}  // namespace baire::cli
