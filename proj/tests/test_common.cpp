#include <doctest.h>

#include "shotscout/common/base64.hpp"
#include "shotscout/common/hash.hpp"
#include "shotscout/common/strings.hpp"
#include "shotscout/common/subprocess.hpp"
#include "shotscout/common/vecmath.hpp"
#include "shotscout/errors.hpp"
#include "support/testutil.hpp"

using namespace shotscout;

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("sha256_file matches in-memory hash") {
    testutil::TempDir tmp;
    auto f = testutil::write_file(tmp / "x.bin", "some bytes\n");
    CHECK(sha256_file_hex(f) == sha256_hex("some bytes\n"));
    CHECK_THROWS_AS(sha256_file_hex(tmp / "missing.bin"), Error);
}

TEST_CASE("base64 rfc vectors") {
    CHECK(base64_encode("") == "");
    CHECK(base64_encode("f") == "Zg==");
    CHECK(base64_encode("fo") == "Zm8=");
    CHECK(base64_encode("foo") == "Zm9v");
    CHECK(base64_encode("foob") == "Zm9vYg==");
    CHECK(base64_encode("fooba") == "Zm9vYmE=");
    CHECK(base64_encode("foobar") == "Zm9vYmFy");
}

TEST_CASE("utf8_length counts code points") {
    CHECK(utf8_length("abc") == 3);
    CHECK(utf8_length("") == 0);
    CHECK(utf8_length(testutil::cjk_text(250)) == 250);
    CHECK(utf8_length("a\xE8\xA7\x86z") == 3);
}

TEST_CASE("string helpers") {
    CHECK(to_lower("AbC") == "abc");
    CHECK(trim("  x \n") == "x");
    CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(replace_all("x {M} y {M}", "{M}", "3") == "x 3 y 3");
    CHECK(format_seconds(128.0) == "128");
    CHECK(format_seconds(1.25) == "1.25");
    CHECK(format_seconds(10.008) == "10.008");
}

TEST_CASE("run_command captures streams and exit codes") {
    auto ok = run_command({"/bin/sh", "-c", "echo out; echo err >&2"});
    CHECK(ok.exit_code == 0);
    CHECK(ok.out == "out\n");
    CHECK(ok.err == "err\n");

    auto fail = run_command({"/bin/sh", "-c", "exit 3"});
    CHECK(fail.exit_code == 3);

    auto missing = run_command({"/definitely/not/a/binary"});
    CHECK(missing.exit_code == 127);
    CHECK(missing.err.find("exec failed") != std::string::npos);
}

TEST_CASE("cosine similarity") {
    std::vector<float> a{1, 0}, b{0, 1}, c{2, 0};
    CHECK(cosine_similarity(a, b) == doctest::Approx(0.0));
    CHECK(cosine_similarity(a, a) == doctest::Approx(1.0));
    CHECK(cosine_similarity(a, c) == doctest::Approx(1.0));
    CHECK_THROWS_AS(cosine_similarity(a, std::vector<float>{1, 2, 3}), Error);

    // integer vectors with exact norms: cosine is bit-exact 0.7 and 0.8
    std::vector<float> p{6, 8, 0, 0}, q{5, 5, 7, 1}, r{0, 10, 0, 0};
    CHECK(cosine_similarity(p, q) == 0.7);
    CHECK(cosine_similarity(p, r) == 0.8);
}
