#include <doctest.h>

#include <filesystem>
#include <set>

#include "tdkit/common.hpp"
#include "tdkit/java/extract.hpp"
#include "tdkit/java/lexer.hpp"

using namespace tdkit;
using namespace tdkit::java;
namespace fs = std::filesystem;

namespace {

const fs::path kData = TDKIT_DATA_DIR;

FileExtraction run(const std::string& src) { return extract_file(SourceFile("r", "A.java", src)); }

const FunctionUnit& by_name(const FileExtraction& x, const std::string& name) {
  for (const auto& f : x.functions)
    if (f.name == name) return f;
  FAIL("no function " << name);
  throw 0;
}

}  // namespace

TEST_CASE("methods and constructors, literal braces ignored") {
  auto x = run(
      "class A {\n"
      "  A() { s = \"}\"; }\n"
      "  int f(int a) {\n"
      "    return '{' + a;\n"
      "  }\n"
      "  abstract void g();\n"
      "}\n");
  REQUIRE(x.functions.size() == 2);
  CHECK(x.functions[0].name == "A");
  CHECK(x.functions[1].name == "f");
  CHECK(x.functions[1].start_line == 3);
  CHECK(x.functions[1].end_line == 5);
  CHECK_FALSE(x.skipped);
}

TEST_CASE("anonymous class methods stay inside the enclosing method") {
  auto x = run(
      "class A {\n"
      "  void run() {\n"
      "    Runnable r = new Runnable() {\n"
      "      public void run() { go(); }\n"
      "    };\n"
      "  }\n"
      "}\n");
  REQUIRE(x.functions.size() == 1);
  CHECK(x.functions[0].end_line == 6);
}

TEST_CASE("initializers and field lambdas are not functions") {
  auto x = run(
      "class A {\n"
      "  static { init(); }\n"
      "  { more(); }\n"
      "  Runnable r = () -> { go(); };\n"
      "  void m() {}\n"
      "}\n");
  REQUIRE(x.functions.size() == 1);
  CHECK(x.functions[0].name == "m");
}

TEST_CASE("leading and inner comments; consecutive line comments merge") {
  auto x = run(
      "class A {\n"
      "  /** Javadoc. */\n"
      "  @Override\n"
      "  public void m() {\n"
      "    // one\n"
      "    // two\n"
      "\n"
      "    // three\n"
      "    /* four */ /* five */\n"
      "  }\n"
      "}\n");
  const auto& f = by_name(x, "m");
  REQUIRE(f.comments.size() == 5);
  CHECK(f.comments[0].position == CommentPosition::Leading);
  CHECK(f.comments[0].kind == CommentKind::Block);
  CHECK(f.comments[1].raw_text == "// one\n// two");
  CHECK(f.comments[1].start_line == 5);
  CHECK(f.comments[1].end_line == 6);
  CHECK(f.comments[2].raw_text == "// three");
  CHECK(f.comments[3].kind == CommentKind::Block);
  for (std::size_t i = 1; i < f.comments.size(); ++i) CHECK(f.comments[i].position == CommentPosition::Inner);
}

TEST_CASE("a comment separated by a blank line is not leading") {
  auto x = run(
      "class A {\n"
      "  // stray\n"
      "\n"
      "  void m() {}\n"
      "}\n");
  CHECK(by_name(x, "m").comments.empty());
}

TEST_CASE("trailing comment on a previous code line is not leading") {
  auto x = run(
      "class A {\n"
      "  int x; // about x\n"
      "  void m() {}\n"
      "}\n");
  CHECK(by_name(x, "m").comments.empty());
}

TEST_CASE("unbalanced braces skip the file") {
  auto x = run("class A {\n  void m() {\n}\n");
  CHECK(x.skipped);
  CHECK(x.functions.empty());
}

TEST_CASE("body text maps to source lines") {
  const std::string src =
      "class A {\n"
      "  void m() {\n"
      "    int a = 1;\n"
      "  }\n"
      "}\n";
  auto x = run(src);
  const auto& f = by_name(x, "m");
  CHECK(f.body_text == "  void m() {\n    int a = 1;\n  }");
}

TEST_CASE("ids are stable and distinct") {
  CHECK(function_id("r", "p", 1, "void m()") == function_id("r", "p", 1, "void m()"));
  CHECK(function_id("r", "p", 1, "void m()") != function_id("r", "p", 2, "void m()"));
  auto a = run("class A { void m() { /* c */ } }");
  auto b = run("class A { void m() { /* c */ } }");
  CHECK(a.functions[0].id == b.functions[0].id);
  CHECK(a.functions[0].comments[0].id == b.functions[0].comments[0].id);
}

TEST_CASE("json round trip") {
  auto x = run("class A {\n  // lead\n  int m(int a) {\n    // in\n    return a;\n  }\n}\n");
  const auto& f = x.functions.at(0);
  auto back = function_from_json(to_json(f));
  CHECK(to_json(back) == to_json(f));
}

TEST_CASE("mini corpus: every comment sits inside its function's lines") {
  auto scan = scan_corpus(kData / "mini-corpus");
  auto corpus = extract_corpus(scan.files);
  CHECK(corpus.files_skipped == 0);
  CHECK(corpus.functions.size() >= 40);
  std::set<std::string> ids;
  for (const auto& fn : corpus.functions) {
    CHECK(ids.insert(fn.id).second);
    CHECK(fn.start_line <= fn.end_line);
    for (const auto& c : fn.comments) {
      CHECK(ids.insert(c.id).second);
      CHECK(c.function_id == fn.id);
      CHECK(c.start_line <= c.end_line);
      CHECK(c.end_line <= fn.end_line);
      if (c.position == CommentPosition::Inner) CHECK(c.start_line >= fn.start_line);
    }
  }
}

TEST_CASE("scan_corpus groups by first-level directory") {
  auto scan = scan_corpus(kData / "mini-corpus");
  std::set<std::string> repos;
  for (const auto& f : scan.files) repos.insert(f.repo_id());
  CHECK(repos.size() == 12);
  CHECK(repos.count("voicecall") == 1);
  CHECK_THROWS_AS(scan_corpus(kData / "does-not-exist"), Error);
}
