#pragma once

#include <string>

#include "eulerchar/closure.hpp"
#include "eulerchar/euler.hpp"
#include "eulerchar/fan.hpp"
#include "eulerchar/motive.hpp"

namespace eulerchar {

// JSON serialization of the file-facing records.  Parsers throw
// Errc::ParseError with a location for malformed input; semantic problems
// surface through the usual construction errors (fan validation, closure
// checks, ...).

Fan parse_fan_json(const std::string& text);
std::string fan_json(const Fan& f);

// {"fan": ..., "inserted_rays": [...]} for resolution results.
std::string resolution_json(const Resolution& r);

GoodClosure parse_closure_json(const std::string& text);
std::string closure_json(const GoodClosure& gc);

StratifiedVariety parse_variety_json(const std::string& text);
std::string variety_json(const StratifiedVariety& v);

SeedTable parse_seeds_json(const std::string& text);
std::string seeds_json(const SeedTable& s);

std::string path_json(const FactorizationPath& p);
FactorizationPath parse_path_json(const std::string& text);

// Whole-file helpers; failures throw Errc::IoError naming the path.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace eulerchar
