#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <string>

#include "peerinfo/io.hpp"

using namespace peerinfo;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("peerinfo_io_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string two_worker_schedule_csv() {
  std::string out = std::string(io::kScheduleHeader) + "\n";
  for (const char* id : {"alpha", "beta"})
    for (const char* scen : {"exante", "expost"})
      for (int b = 1; b <= 9; ++b)
        out += std::string(id) + "," + scen + "," + std::to_string(b) + ",1," +
               std::to_string(b) + "\n";
  return out;
}

}  // namespace

TEST_CASE("csv quoting") {
  REQUIRE(io::csv_escape("plain") == "plain");
  REQUIRE(io::csv_escape("a,b") == "\"a,b\"");
  REQUIRE(io::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  REQUIRE(io::csv_split("a,\"b,c\",\"d\"\"e\"") ==
          std::vector<std::string>{"a", "b,c", "d\"e"});
}

TEST_CASE("schedule ingestion") {
  TempDir dir;
  SECTION("well-formed file yields complete schedules") {
    io::write_file(dir.file("s.csv"), two_worker_schedule_csv());
    const auto schedules = io::ingest_schedules(dir.file("s.csv"));
    REQUIRE(schedules.size() == 2);
    REQUIRE(schedules[0].first == "alpha");
    REQUIRE(schedules[0].second.exante[0] == 1);
    REQUIRE(schedules[0].second.expost[8] == 9);
  }
  SECTION("out-of-range cents name the row") {
    std::string csv = two_worker_schedule_csv();
    csv += "gamma,exante,1,1,51\n";  // line 38
    io::write_file(dir.file("s.csv"), csv);
    REQUIRE_THROWS_WITH(io::ingest_schedules(dir.file("s.csv")),
                        Catch::Matchers::ContainsSubstring(":38:") &&
                            Catch::Matchers::ContainsSubstring("out of range"));
  }
  SECTION("a missing bin is an incomplete schedule") {
    std::string csv = std::string(io::kScheduleHeader) + "\n";
    for (const char* scen : {"exante", "expost"})
      for (int b = 1; b <= 9; ++b)
        if (!(b == 7 && std::string(scen) == "expost"))
          csv += std::string("solo,") + scen + "," + std::to_string(b) + ",0,3\n";
    io::write_file(dir.file("s.csv"), csv);
    REQUIRE_THROWS_WITH(io::ingest_schedules(dir.file("s.csv")),
                        Catch::Matchers::ContainsSubstring("incomplete schedule") &&
                            Catch::Matchers::ContainsSubstring("expost bin 7"));
  }
  SECTION("duplicates are rejected") {
    std::string csv = two_worker_schedule_csv();
    csv += "alpha,exante,3,1,10\n";
    io::write_file(dir.file("s.csv"), csv);
    REQUIRE_THROWS_WITH(io::ingest_schedules(dir.file("s.csv")),
                        Catch::Matchers::ContainsSubstring("duplicate"));
  }
  SECTION("multiple bad rows are all reported") {
    std::string csv = two_worker_schedule_csv();
    csv += "x,exante,0,1,10\n";
    csv += "y,nonsense,1,1,10\n";
    io::write_file(dir.file("s.csv"), csv);
    try {
      io::ingest_schedules(dir.file("s.csv"));
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      const std::string what = e.what();
      REQUIRE(what.find(":38:") != std::string::npos);
      REQUIRE(what.find(":39:") != std::string::npos);
    }
  }
  SECTION("missing file") {
    REQUIRE_THROWS_AS(io::ingest_schedules(dir.file("absent.csv")), ValidationError);
  }
}

TEST_CASE("schedule render round-trips bit-exactly") {
  WtpSchedule s;
  for (int b = 0; b < kNumBins; ++b) {
    s.exante[b] = b - 4;
    s.expost[b] = 50 - b * 7;
  }
  const std::vector<std::pair<std::string, WtpSchedule>> original = {{"w1", s}, {"w2", {}}};
  TempDir dir;
  io::write_schedules(dir.file("s.csv"), original);
  const auto ingested = io::ingest_schedules(dir.file("s.csv"));
  REQUIRE(io::render_schedules(ingested) == io::read_file(dir.file("s.csv")));
}

TEST_CASE("embedding ingestion") {
  TempDir dir;
  SECTION("well-formed matrix") {
    io::write_file(dir.file("e.txt"), "d=3\na,1,2,3\nb,4,5,6\nc,7,8,9\nd,1.5,-2.25,0.125\n");
    const EmbeddingMatrix X = io::ingest_embeddings(dir.file("e.txt"));
    REQUIRE(X.rows() == 4);
    REQUIRE(X.dim == 3);
    REQUIRE(X.ids[3] == "d");
    REQUIRE(X.row(3)[1] == -2.25);
  }
  SECTION("dimension mismatch") {
    io::write_file(dir.file("e.txt"), "d=3\na,1,2\nb,4,5,6\n");
    REQUIRE_THROWS_WITH(io::ingest_embeddings(dir.file("e.txt")),
                        Catch::Matchers::ContainsSubstring(":2:"));
  }
  SECTION("non-finite entries") {
    io::write_file(dir.file("e.txt"), "d=2\na,1,nan\nb,4,5\n");
    REQUIRE_THROWS_AS(io::ingest_embeddings(dir.file("e.txt")), ValidationError);
    io::write_file(dir.file("e2.txt"), "d=2\na,1,inf\nb,4,5\n");
    REQUIRE_THROWS_AS(io::ingest_embeddings(dir.file("e2.txt")), ValidationError);
  }
  SECTION("bad header") {
    io::write_file(dir.file("e.txt"), "dim=3\na,1,2,3\n");
    REQUIRE_THROWS_AS(io::ingest_embeddings(dir.file("e.txt")), ValidationError);
  }
  SECTION("round-trip is bit-exact") {
    io::write_file(dir.file("e.txt"), "d=2\na,0.333333333,2\nb,-4.125,5e-09\n");
    const EmbeddingMatrix X = io::ingest_embeddings(dir.file("e.txt"));
    REQUIRE(io::render_embeddings(X) == io::read_file(dir.file("e.txt")));
  }
}

TEST_CASE("worker records round-trip bit-exactly") {
  PopulationConfig cfg;
  cfg.n = 40;
  cfg.seed = 4;
  cfg.effort_noise_sd = 1.5;
  auto records = simulate_population(cfg);
  run_experiment(records, cfg);

  TempDir dir;
  io::write_workers(dir.file("w.csv"), records);
  const auto ingested = io::ingest_workers(dir.file("w.csv"));
  REQUIRE(ingested.size() == records.size());
  REQUIRE(io::render_workers(ingested) == io::read_file(dir.file("w.csv")));
  for (std::size_t i = 0; i < records.size(); ++i) {
    REQUIRE(ingested[i].worker_id == records[i].worker_id);
    REQUIRE(ingested[i].type == records[i].type);
    REQUIRE(ingested[i].e1 == records[i].e1);
    REQUIRE(ingested[i].e2 == records[i].e2);
    REQUIRE(ingested[i].bin == records[i].bin);
    REQUIRE(ingested[i].schedule.exante == records[i].schedule.exante);
    REQUIRE(ingested[i].schedule.expost == records[i].schedule.expost);
    REQUIRE(ingested[i].arm == records[i].arm);
    REQUIRE(ingested[i].bdm.has_value() == records[i].bdm.has_value());
  }
}

TEST_CASE("cluster label csv") {
  TempDir dir;
  io::write_file(dir.file("c.csv"), io::render_clusters({"a", "b"}, {0, 1}));
  const auto labels = io::ingest_clusters(dir.file("c.csv"));
  REQUIRE(labels.size() == 2);
  REQUIRE(labels[1] == std::pair<std::string, int>{"b", 1});
  std::vector<std::string> ids;
  std::vector<int> values;
  for (const auto& [id, v] : labels) {
    ids.push_back(id);
    values.push_back(v);
  }
  REQUIRE(io::render_clusters(ids, values) == io::read_file(dir.file("c.csv")));
  io::write_file(dir.file("bad.csv"), "worker_id,cluster\na,-1\n");
  REQUIRE_THROWS_AS(io::ingest_clusters(dir.file("bad.csv")), ValidationError);
}

TEST_CASE("float formatting uses nine significant digits") {
  REQUIRE(io::fmt_double(0.1) == "0.1");
  REQUIRE(io::fmt_double(1.0 / 3.0) == "0.333333333");
  REQUIRE(io::fmt_double(-47.6) == "-47.6");
  REQUIRE(io::fmt_double(5e-9) == "5e-09");
}
