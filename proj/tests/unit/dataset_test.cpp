#include <catch2/catch_amalgamated.hpp>

#include "mtst/dataset.hpp"
#include "test_util.hpp"

using namespace mtst;
using mtst_test::TempDir;

namespace {
LabelSchema test_schema() {
    LabelSchema s;
    s.multi_labels = {"race", "religion", "gender"};
    return s;
}
}  // namespace

TEST_CASE("jsonl loader maps fields, labels and ids") {
    TempDir tmp;
    auto path = tmp.write("data.jsonl",
                          R"({"id":"1","text":"hi there","main_label":"normal"})"
                          "\n"
                          R"({"text":"second","labels":["gender","race"],"lang":"en"})"
                          "\n"
                          R"({"id":"3","text":"voted","main_label":["hate","hate","normal"]})"
                          "\n");
    LabelSchema schema = test_schema();
    RejectReport report;
    auto samples = load_dataset(path.string(), FileFormat::jsonl, {}, schema, report);

    REQUIRE(samples.size() == 3);
    CHECK(report.accepted == 3);
    CHECK(report.rejected == 0);

    CHECK(samples[0].id == "1");
    CHECK(samples[0].main_label == 2);  // "normal"
    CHECK_FALSE(samples[0].multi_label.has_value());

    CHECK(samples[1].id == "row-2");  // assigned id
    REQUIRE(samples[1].multi_label.has_value());
    CHECK(*samples[1].multi_label == std::vector<uint8_t>{1, 0, 1});
    CHECK(samples[1].lang == "en");

    CHECK(samples[2].main_label == 0);  // annotator majority
}

TEST_CASE("csv loader with field map and quoted cells") {
    TempDir tmp;
    auto path = tmp.write("data.csv",
                          "comment_id,body,tags,tone\n"
                          "c1,\"hello, world\",race|gender,normal\n"
                          "c2,plain,,offensive\n"
                          "c3,\"with \"\"quotes\"\"\",religion,hate\n");
    FieldMap fm;
    fm.id = "comment_id";
    fm.text = "body";
    fm.labels = "tags";
    fm.main_label = "tone";
    LabelSchema schema = test_schema();
    RejectReport report;
    auto samples = load_dataset(path.string(), FileFormat::csv, fm, schema, report);

    REQUIRE(samples.size() == 3);
    CHECK(samples[0].text == "hello, world");
    CHECK(*samples[0].multi_label == std::vector<uint8_t>{1, 0, 1});
    CHECK(samples[1].main_label == 1);
    CHECK_FALSE(samples[1].multi_label.has_value());
    CHECK(samples[2].text == "with \"quotes\"");
    CHECK(*samples[2].multi_label == std::vector<uint8_t>{0, 1, 0});
}

TEST_CASE("rejects are counted per reason, never silently dropped") {
    TempDir tmp;
    auto path = tmp.write("data.jsonl",
                          R"({"id":"1","text":"ok","main_label":"normal"})"
                          "\n"
                          R"({"id":"2","text":"   ","main_label":"normal"})"
                          "\n"
                          R"({"id":"3","text":"x","main_label":"spam"})"
                          "\n"
                          "not json at all\n");
    LabelSchema schema = test_schema();
    RejectReport report;
    LoadOptions opts;
    opts.reject_budget = 1.0;
    auto samples = load_dataset(path.string(), FileFormat::jsonl, {}, schema, report, opts);

    CHECK(samples.size() == 1);
    CHECK(report.total == 4);
    CHECK(report.rejected == 3);
    size_t reason_total = 0;
    for (const auto& [reason, count] : report.reasons) reason_total += count;
    CHECK(reason_total == 3);

    auto j = report.to_json();
    CHECK(j["total"] == 4);
    CHECK(j["rejected"] == 3);
}

TEST_CASE("reject budget breach raises") {
    TempDir tmp;
    auto path = tmp.write("data.jsonl",
                          R"({"id":"1","text":"ok","main_label":"normal"})"
                          "\n"
                          "garbage\n");
    LabelSchema schema = test_schema();
    RejectReport report;
    LoadOptions opts;
    opts.reject_budget = 0.01;
    CHECK_THROWS_WITH(load_dataset(path.string(), FileFormat::jsonl, {}, schema, report, opts),
                      Catch::Matchers::ContainsSubstring("reject budget"));
}

TEST_CASE("loading is deterministic and order-preserving") {
    TempDir tmp;
    std::string content;
    for (int i = 0; i < 50; ++i)
        content += R"({"id":"id)" + std::to_string(i) + R"(","text":"t )" + std::to_string(i) +
                   R"(","main_label":"normal"})" + "\n";
    auto path = tmp.write("data.jsonl", content);
    LabelSchema schema = test_schema();
    RejectReport r1, r2;
    auto a = load_dataset(path.string(), FileFormat::jsonl, {}, schema, r1);
    auto b = load_dataset(path.string(), FileFormat::jsonl, {}, schema, r2);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].id == "id" + std::to_string(i));
    }
}

TEST_CASE("missing file raises with the path in the message") {
    LabelSchema schema = test_schema();
    RejectReport report;
    CHECK_THROWS_WITH(load_dataset("/nonexistent/nope.jsonl", FileFormat::jsonl, {}, schema, report),
                      Catch::Matchers::ContainsSubstring("nope.jsonl"));
}

TEST_CASE("write_jsonl round-trips samples") {
    TempDir tmp;
    LabelSchema schema = test_schema();
    std::vector<Sample> samples;
    samples.push_back({"a", "first text", "en", std::vector<uint8_t>{1, 0, 0}, 0, Provenance::gold});
    samples.push_back({"b", "second 你好", "zh", std::nullopt, 2, Provenance::pseudo});
    auto path = tmp.path() / "out.jsonl";
    write_jsonl(path.string(), samples, schema);

    RejectReport report;
    auto back = load_dataset(path.string(), FileFormat::jsonl, {}, schema, report);
    REQUIRE(back.size() == 2);
    CHECK(back[0].multi_label == samples[0].multi_label);
    CHECK(back[1].main_label == samples[1].main_label);
    CHECK(back[1].text == samples[1].text);
}
