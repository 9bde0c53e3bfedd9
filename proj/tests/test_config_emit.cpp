// Copyright 2026 The stratcomm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "stratcomm/config.hpp"
#include "stratcomm/emit.hpp"

using namespace stratcomm;

namespace {

const std::filesystem::path kConfigs = std::filesystem::path(STRATCOMM_SOURCE_DIR) / "configs";

ConfigError parse_failure(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("config was accepted: " << text);
  return ConfigError(ConfigError::Kind::kIo, "unreachable");
}

const char* kModel = R"({
  "schema_version": 1,
  "model": {
    "alphabets": {"W": 2, "U": 2, "Y": 1, "X": 2, "Xhat": 2, "What": 2},
    "p_w": [0.5, 0.5],
    "obs_kernel": [[0.9, 0.1], [0.1, 0.9]],
    "channel": [[1, 0], [0, 1]],
    "distortion": {"encoder": {"matrix": [[0, 1], [1, 0]]},
                   "decoder": {"matrix": [[0, 1], [1, 0]]}}
  }
})";

std::string with(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("bundled configs load") {
  const auto t1 = load_config(kConfigs / "table1.json");
  REQUIRE(t1.game.has_value());
  CHECK(t1.game->preset == "table1");
  CHECK(t1.game->alpha == 1.0);
  CHECK(t1.game->beta == 1.0);
  CHECK(t1.game->game.rows() == 3);
  CHECK(t1.game->game.dec_distortion[2][2] == 1.0);
  CHECK(t1.commitment == Commitment::kPure);

  const auto chain = load_config(kConfigs / "chain_binary.json");
  REQUIRE(chain.model.has_value());
  CHECK(chain.seed == 42u);
  CHECK(validate_model(*chain.model).empty());

  for (const auto& entry : std::filesystem::directory_iterator(kConfigs)) {
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path()));
  }
}

TEST_CASE("minimal config gets every default") {
  const auto c = parse_config(R"({"schema_version": 1})");
  CHECK_FALSE(c.seed.has_value());
  CHECK_FALSE(c.model.has_value());
  CHECK(c.solver.tie_tolerance == 1e-9);
  CHECK(c.audit.instances == 500);
  CHECK(c.rd.source.size() == 3);
  CHECK(c.rd.betas == default_rd_betas());
  CHECK(c.output_format == OutputFormat::kCsv);
}

TEST_CASE("resolved configuration parses back to itself") {
  for (const auto& text : {std::string(kModel), std::string(R"({"schema_version": 1, "seed": 9})")}) {
    const auto a = resolved_json(parse_config(text));
    const auto b = resolved_json(parse_config(a.dump()));
    CHECK(a == b);
  }
}

TEST_CASE("parse errors carry line and column") {
  const auto e = parse_failure("{\n  \"schema_version\": 1,\n  \"seed\": ,\n}");
  CHECK(e.kind() == ConfigError::Kind::kParse);
  REQUIRE(e.line().has_value());
  CHECK(*e.line() == 3);
  CHECK(e.column().has_value());
}

TEST_CASE("validation errors name the field") {
  SUBCASE("missing kernel row") {
    const auto e = parse_failure(with(kModel, "[[0.9, 0.1], [0.1, 0.9]]", "[[0.9, 0.1]]"));
    CHECK(e.kind() == ConfigError::Kind::kValidation);
    CHECK(e.field() == "model.obs_kernel");
  }
  SUBCASE("kernel row summing to 0.9") {
    const auto e = parse_failure(with(kModel, "[[1, 0], [0, 1]]", "[[1, 0], [0, 0.9]]"));
    CHECK(e.field() == "model.channel[1]");
  }
  SUBCASE("negative probability") {
    const auto e = parse_failure(with(kModel, "[0.5, 0.5]", "[1.5, -0.5]"));
    CHECK(e.field() == "model.p_w[1]");
  }
  SUBCASE("unknown key") {
    const auto e = parse_failure(with(kModel, "\"p_w\"", "\"pw_typo\": 1, \"p_w\""));
    CHECK(e.field() == "model.pw_typo");
  }
  SUBCASE("ragged distortion matrix") {
    const auto e = parse_failure(with(kModel, "\"encoder\": {\"matrix\": [[0, 1], [1, 0]]}",
                                      "\"encoder\": {\"matrix\": [[0, 1], [1]]}"));
    CHECK(e.field() == "model.distortion.encoder.matrix[1]");
  }
  SUBCASE("schema version") {
    CHECK(parse_failure(R"({"schema_version": 2})").field() == "schema_version");
    CHECK(parse_failure(R"({})").field() == "schema_version");
  }
  SUBCASE("bad sweep") {
    const auto e = parse_failure(
        R"({"schema_version": 1, "sweep": {"alpha": {"start": 1, "stop": 0, "step": 1}}})");
    CHECK(e.field() == "sweep.alpha.stop");
  }
  SUBCASE("audit alphabets above three") {
    const auto e = parse_failure(R"({"schema_version": 1, "audit": {"max_alphabet": 4}})");
    CHECK(e.field() == "audit.max_alphabet");
  }
  SUBCASE("negative seed") {
    CHECK(parse_failure(R"({"schema_version": 1, "seed": -1})").field() == "seed");
  }
  SUBCASE("unknown output format") {
    CHECK(parse_failure(R"({"schema_version": 1, "output": {"format": "xml"}})").field() ==
          "output.format");
  }
}

TEST_CASE("missing file is an I/O error") {
  try {
    load_config(kConfigs / "does_not_exist.json");
    FAIL("no error");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == ConfigError::Kind::kIo);
  }
}

TEST_CASE("range values") {
  const auto v = Range{0, 7, 0.1}.values();
  CHECK(v.size() == 71);
  CHECK(v[12] == 1.2);
  CHECK(v.back() == 7.0);
  CHECK(Range{-7, 7, 0.5}.values().size() == 29);
  CHECK(Range{2, 2, 1}.values() == std::vector<double>{2.0});
}

TEST_CASE("real formatting") {
  CHECK(format_real(0.1 + 0.2) == "0.3");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(1e-20) == "1e-20");
  CHECK(format_real(std::nan("")) == "nan");
  CHECK(round_to_emitted(1.0 / 3.0) == 0.333333333333);
}

TEST_CASE("empty table gives a header-only file") {
  Table t;
  t.columns = {"a", "b"};
  const Metadata meta = {{"tool", "stratcomm"}};
  CHECK(render_csv(t, meta) == "# tool: stratcomm\na,b\n");
  const auto j = nlohmann::json::parse(render_json(t, meta));
  CHECK(j["rows"].empty());
  CHECK(j["columns"].size() == 2);
}

TEST_CASE("CSV and JSON carry the same values") {
  Table t;
  t.columns = {"name", "x", "n", "flag", "missing"};
  t.rows.push_back({std::string("plain"), 1.0 / 3.0, std::int64_t{7}, true, std::monostate{}});
  t.rows.push_back({std::string("has,comma \"q\""), -2.5e-13, std::int64_t{-1}, false, 4.0});
  const Metadata meta = {{"seed", "3"}};

  const auto csv = render_csv(t, meta);
  const auto json = nlohmann::json::parse(render_json(t, meta));
  CHECK(json["metadata"]["seed"] == "3");

  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# seed: 3");
  std::getline(in, line);
  CHECK(split_csv_line(line) == t.columns);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::getline(in, line);
    const auto cells = split_csv_line(line);
    const auto& jr = json["rows"][r];
    REQUIRE(cells.size() == t.columns.size());
    CHECK(cells[0] == jr["name"].get<std::string>());
    CHECK(std::stod(cells[1]) == jr["x"].get<double>());
    CHECK(std::stoll(cells[2]) == jr["n"].get<std::int64_t>());
    CHECK((cells[3] == "true") == jr["flag"].get<bool>());
    if (cells[4].empty()) {
      CHECK(jr["missing"].is_null());
    } else {
      CHECK(std::stod(cells[4]) == jr["missing"].get<double>());
    }
  }
  CHECK_THROWS(render_csv(Table{{"a"}, {{1.0, 2.0}}}, {}));
}

TEST_CASE("file output") {
  const auto dir = std::filesystem::temp_directory_path() / "stratcomm_emit_test";
  std::filesystem::create_directories(dir);
  Table t{{"v"}, {{0.5}}};
  emit(t, {}, OutputFormat::kJson, dir / "out.json");
  std::ifstream f(dir / "out.json");
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == render_json(t, {}));
  CHECK_THROWS_WITH_AS(write_file(dir / "missing" / "x.csv", "x"),
                       doctest::Contains("missing"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(parse_format("json") == OutputFormat::kJson);
  CHECK_THROWS(parse_format("xml"));
}
