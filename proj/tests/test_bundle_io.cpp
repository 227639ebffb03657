/* Copyright 2026 The Condsel Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "condsel/analysis.hpp"
#include "condsel/harness/bundle.hpp"
#include "condsel/harness/io.hpp"
#include "condsel/rng.hpp"
#include "test_support.hpp"

namespace condsel {
namespace {

using testing::TempDir;

ConductanceBundle SampleBundle(std::size_t rows = 3, std::size_t d = 4, std::uint64_t seed = 1) {
  ConductanceBundle b;
  b.model_id = "RN50_openai";
  b.task_id = "cifar10";
  b.block_count = d;
  b.extraction.extractor_version = "test/1";
  b.extraction.extra["preprocessing"] = "clip-224";
  CounterRng rng(seed);
  for (std::size_t r = 0; r < rows; ++r) {
    Vector row(d);
    for (double& x : row) x = rng.Uniform() * std::pow(10.0, rng.Uniform(-6, 3));
    b.samples.push_back(row);
  }
  return b;
}

TEST(FormatShortestTest, RoundTripsAndMarksIntegers) {
  EXPECT_EQ(FormatShortest(2.0), "2.0");
  EXPECT_EQ(FormatShortest(0.1), "0.1");
  CounterRng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.Uniform() * std::pow(10.0, rng.Uniform(-300, 300));
    EXPECT_EQ(std::stod(FormatShortest(v)), v);
  }
}

TEST(BundleTest, MinimalFileParses) {
  const std::string text =
      R"({"block_count": 2, "extraction": {"baseline": "zero", "extractor_version": "x", "steps": 50},
          "model_id": "m", "objective": "l2norm", "samples": [[0.5, 1]], "task_id": "t"})";
  const ConductanceBundle b = ParseBundle(text);
  EXPECT_EQ(b.sample_count(), 1u);
  EXPECT_EQ(b.block_count, 2u);
  EXPECT_EQ(b.samples[0], (Vector{0.5, 1.0}));
  EXPECT_EQ(b.extraction.steps, 50);
}

TEST(BundleTest, NegativeEntryNamesTheCell) {
  const std::string text =
      R"({"block_count": 2, "extraction": {"baseline": "zero", "extractor_version": "x", "steps": 50},
          "model_id": "m", "objective": "l2norm", "samples": [[0.5, 1], [0.2, -3]], "task_id": "t"})";
  try {
    ParseBundle(text, "f.json");
    FAIL() << "expected validation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("row 1 column 1"), std::string::npos) << msg;
    EXPECT_NE(msg.find("f.json"), std::string::npos) << msg;
  }
}

TEST(BundleTest, RejectsMalformedDocuments) {
  EXPECT_CONDSEL_ERROR(ParseBundle("{not json"), ErrorKind::kParse);
  EXPECT_CONDSEL_ERROR(ParseBundle("[]"), ErrorKind::kParse);
  EXPECT_CONDSEL_ERROR(ParseBundle(R"({"block_count": 1})"), ErrorKind::kParse);
  const std::string ragged =
      R"({"block_count": 2, "extraction": {"baseline": "zero", "extractor_version": "x", "steps": 50},
          "model_id": "m", "objective": "l2norm", "samples": [[0.5, 1], [0.2]], "task_id": "t"})";
  EXPECT_CONDSEL_ERROR(ParseBundle(ragged), ErrorKind::kValidation);
  const std::string wrong_objective =
      R"({"block_count": 1, "extraction": {"baseline": "zero", "extractor_version": "x", "steps": 50},
          "model_id": "m", "objective": "logit", "samples": [[0.5]], "task_id": "t"})";
  EXPECT_CONDSEL_ERROR(ParseBundle(wrong_objective), ErrorKind::kValidation);
  const std::string empty =
      R"({"block_count": 1, "extraction": {"baseline": "zero", "extractor_version": "x", "steps": 50},
          "model_id": "m", "objective": "l2norm", "samples": [], "task_id": "t"})";
  EXPECT_CONDSEL_ERROR(ParseBundle(empty), ErrorKind::kValidation);
  const std::string text_cell =
      R"({"block_count": 1, "extraction": {"baseline": "zero", "extractor_version": "x", "steps": 50},
          "model_id": "m", "objective": "l2norm", "samples": [["a"]], "task_id": "t"})";
  EXPECT_CONDSEL_ERROR(ParseBundle(text_cell), ErrorKind::kValidation);
}

TEST(BundleTest, SerializationIsCanonicalAndByteStable) {
  const ConductanceBundle b = SampleBundle(5, 6);
  const std::string once = SerializeBundle(b);
  const ConductanceBundle back = ParseBundle(once);
  EXPECT_EQ(back, b);
  EXPECT_EQ(SerializeBundle(back), once);
  // Keys appear in lexicographic order.
  std::vector<std::size_t> pos;
  for (const char* key : {"\"block_count\"", "\"extraction\"", "\"model_id\"", "\"objective\"",
                          "\"samples\"", "\"task_id\""}) {
    pos.push_back(once.find(key));
  }
  EXPECT_TRUE(std::is_sorted(pos.begin(), pos.end()));
  EXPECT_LT(once.find("\"baseline\""), once.find("\"extractor_version\""));
  EXPECT_LT(once.find("\"extractor_version\""), once.find("\"preprocessing\""));
  EXPECT_LT(once.find("\"preprocessing\""), once.find("\"steps\""));
}

TEST(BundleTest, SaveLoadRoundTripOnDisk) {
  TempDir dir("bundle");
  const ConductanceBundle b = SampleBundle();
  const auto path = dir.path() / BundleFileName(b.model_id, b.task_id);
  SaveBundle(b, path);
  EXPECT_EQ(LoadBundle(path), b);
  EXPECT_EQ(path.filename().string(), "RN50_openai__cifar10.json");
  // No temporary file left behind.
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path())) ++files;
  EXPECT_EQ(files, 1u);
  EXPECT_CONDSEL_ERROR(LoadBundle(dir.path() / "missing.json"), ErrorKind::kIo);
}

TEST(SubsampleTest, FullSizeIsIdentity) {
  const ConductanceBundle b = SampleBundle(10);
  EXPECT_EQ(Subsample(b, 10, 123).samples, b.samples);
}

TEST(SubsampleTest, DeterministicPerKeyAndSorted) {
  const auto a = SubsampleIndices(100, 1, 42);
  EXPECT_EQ(a, SubsampleIndices(100, 1, 42));
  const auto s1 = SubsampleIndices(100, 25, SubsampleKey(0, "cifar10", "source"));
  const auto s2 = SubsampleIndices(100, 25, SubsampleKey(1, "cifar10", "source"));
  EXPECT_EQ(s1, SubsampleIndices(100, 25, SubsampleKey(0, "cifar10", "source")));
  EXPECT_NE(s1, s2);
  EXPECT_TRUE(std::is_sorted(s1.begin(), s1.end()));
  EXPECT_EQ(std::set<std::size_t>(s1.begin(), s1.end()).size(), 25u);
  EXPECT_NE(SubsampleKey(0, "cifar10", "source"), SubsampleKey(0, "cifar10", "target"));
  EXPECT_NE(SubsampleKey(0, "cifar10", "source"), SubsampleKey(0, "cifar100", "source"));
}

TEST(SubsampleTest, RoughlyUniform) {
  std::vector<int> hits(20, 0);
  for (std::uint64_t key = 0; key < 4000; ++key) {
    for (std::size_t i : SubsampleIndices(20, 5, key)) ++hits[i];
  }
  for (int h : hits) EXPECT_NEAR(h, 1000, 120);
}

TEST(SubsampleTest, RowsFollowIndices) {
  const ConductanceBundle b = SampleBundle(30);
  const auto idx = SubsampleIndices(30, 7, 5);
  const ConductanceBundle s = Subsample(b, 7, 5);
  ASSERT_EQ(s.samples.size(), 7u);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(s.samples[i], b.samples[idx[i]]);
  EXPECT_CONDSEL_ERROR(Subsample(b, 31, 5), ErrorKind::kInsufficientData);
  EXPECT_CONDSEL_ERROR(Subsample(b, 0, 5), ErrorKind::kParameter);
}

TEST(BundleSetTest, CoverageAndDirectoryRoundTrip) {
  BundleSet set;
  for (const char* m : {"m1", "m2"}) {
    for (const char* t : {"a", "b"}) {
      ConductanceBundle b = SampleBundle(2, 3);
      b.model_id = m;
      b.task_id = t;
      if (std::string(m) == "m2" && std::string(t) == "b") continue;
      set.Add(b);
    }
  }
  EXPECT_EQ(set.size(), 3u);
  EXPECT_TRUE(set.contains("m1", "b"));
  EXPECT_FALSE(set.contains("m2", "b"));
  EXPECT_CONDSEL_ERROR(set.get("m2", "b"), ErrorKind::kCoverage);
  try {
    set.CheckCoverage({"m1", "m2"}, {"a", "b"});
    FAIL() << "expected coverage error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCoverage);
    EXPECT_NE(std::string(e.what()).find("(m2, b)"), std::string::npos) << e.what();
  }
  EXPECT_CONDSEL_ERROR(set.Add(set.get("m1", "a")), ErrorKind::kValidation);

  TempDir dir("bundleset");
  set.SaveDirectory(dir.path());
  const BundleSet loaded = BundleSet::LoadDirectory(dir.path());
  EXPECT_EQ(loaded.size(), 3u);
  EXPECT_EQ(loaded.get("m1", "b"), set.get("m1", "b"));
  EXPECT_EQ(loaded.models(), (std::vector<std::string>{"m1", "m2"}));
  EXPECT_EQ(loaded.tasks(), (std::vector<std::string>{"a", "b"}));
  EXPECT_CONDSEL_ERROR(BundleSet::LoadDirectory(dir.path() / "nope"), ErrorKind::kIo);
}

TEST(AccuracyCsvTest, ParsesAndValidates) {
  const AccuracyTable t = ParseAccuracyCsv("model,x,y\nA,0.5,0.25\nB,1,0\n");
  EXPECT_EQ(t.models(), (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(t.tasks(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(t.at("A", "y"), 0.25);
  EXPECT_EQ(ParseAccuracyCsv(SerializeAccuracyCsv(t)).column("x"), t.column("x"));

  EXPECT_CONDSEL_ERROR(ParseAccuracyCsv("model,x\nA,1.2\n"), ErrorKind::kValidation);
  EXPECT_CONDSEL_ERROR(ParseAccuracyCsv("model,x,y\nA,0.2\n"), ErrorKind::kValidation);
  EXPECT_CONDSEL_ERROR(ParseAccuracyCsv("model,x,y\nA,0.2,\n"), ErrorKind::kValidation);
  EXPECT_CONDSEL_ERROR(ParseAccuracyCsv("model,x\nA,0.2\nA,0.3\n"), ErrorKind::kValidation);
  EXPECT_CONDSEL_ERROR(ParseAccuracyCsv("model,x\nA,abc\n"), ErrorKind::kParse);
  EXPECT_CONDSEL_ERROR(ParseAccuracyCsv(""), ErrorKind::kParse);
}

TEST(AccuracyCsvTest, LargeTableShape) {
  std::vector<std::string> models, tasks;
  std::vector<Vector> acc(48, Vector(21));
  CounterRng rng(4);
  for (int m = 0; m < 48; ++m) models.push_back("model" + std::to_string(m));
  for (int t = 0; t < 21; ++t) tasks.push_back("task" + std::to_string(t));
  for (auto& row : acc) {
    for (double& v : row) v = rng.Uniform();
  }
  TempDir dir("acc");
  WriteFile(dir.path() / "acc.csv", SerializeAccuracyCsv(AccuracyTable(models, tasks, acc)));
  const AccuracyTable t = LoadAccuracyTable(dir.path() / "acc.csv");
  EXPECT_EQ(t.models().size(), 48u);
  EXPECT_EQ(t.tasks().size(), 21u);
  EXPECT_EQ(t.at("model7", "task3"), acc[7][3]);
}

TEST(GapMatrixCsvTest, RoundTripAndValidation) {
  GapMatrix g;
  g.kind = GapKind::kSemantic;
  g.tasks = {"a", "b", "c"};
  g.values = Matrix::FromRows({{0, 0.25, 0.5}, {0.25, 0, 0.125}, {0.5, 0.125, 0}});
  const GapMatrix back = ParseGapMatrixCsv(SerializeGapMatrixCsv(g), GapKind::kSemantic, "text");
  EXPECT_EQ(back.values, g.values);
  EXPECT_EQ(back.tasks, g.tasks);
  EXPECT_EQ(back.model_id, "text");
  EXPECT_CONDSEL_ERROR(ParseGapMatrixCsv("task,a,b\na,0,1\nb,2,0\n", GapKind::kSemantic, ""),
                       ErrorKind::kValidation);
  EXPECT_CONDSEL_ERROR(ParseGapMatrixCsv("task,a,b\na,1,1\nb,1,0\n", GapKind::kSemantic, ""),
                       ErrorKind::kValidation);
  EXPECT_CONDSEL_ERROR(ParseGapMatrixCsv("task,a,b\na,0,1\n", GapKind::kSemantic, ""),
                       ErrorKind::kShape);
}

TEST(NetworkFileTest, RoundTripIsExactAndByteStable) {
  const ToyNetwork net = ToyNetwork::Random(
      3, {4, 5, 2}, {BlockKind::kAffineTanh, BlockKind::kAffine});
  const std::string text = SerializeNetwork(net);
  const ToyNetwork back = ParseNetwork(text);
  EXPECT_EQ(back, net);
  EXPECT_EQ(SerializeNetwork(back), text);
  EXPECT_EQ(SerializeNetwork(ToyNetwork::Random(3, {4, 5, 2}, {BlockKind::kAffineTanh, BlockKind::kAffine})),
            text);

  TempDir dir("net");
  SaveNetwork(net, dir.path() / "net.json");
  EXPECT_EQ(LoadNetwork(dir.path() / "net.json"), net);
  const Vector x{0.1, 0.2, 0.3, 0.4};
  EXPECT_EQ(Forward(back, x).embedding(), Forward(net, x).embedding());
}

TEST(NetworkFileTest, RejectsBadDocuments) {
  EXPECT_CONDSEL_ERROR(ParseNetwork(R"({"format": "other"})"), ErrorKind::kParse);
  EXPECT_CONDSEL_ERROR(ParseNetwork("nope"), ErrorKind::kParse);
  const std::string wrong_dim =
      R"({"format": "condsel-toynet", "version": 1, "input_dim": 3,
          "blocks": [{"kind": "affine", "weight": [[1, 2]], "bias": [0]}]})";
  EXPECT_CONDSEL_ERROR(ParseNetwork(wrong_dim), ErrorKind::kShape);
  const std::string mismatch =
      R"({"format": "condsel-toynet", "version": 1, "input_dim": 2,
          "blocks": [{"kind": "affine", "weight": [[1, 2]], "bias": [0]},
                     {"kind": "affine", "weight": [[1, 2]], "bias": [0]}]})";
  EXPECT_CONDSEL_ERROR(ParseNetwork(mismatch), ErrorKind::kShape);
}

}  // namespace
}  // namespace condsel
