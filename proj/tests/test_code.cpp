#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "symeq/code.hpp"
#include "symeq/code_io.hpp"
#include "symeq/error.hpp"
#include "symeq/galois.hpp"

using namespace symeq;

namespace {

std::vector<Symbol> bytes(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

Code example1() { return Code::from_words(3, 4, {{0, 1, 2}, {1, 2, 3}, {2, 3, 0}, {3, 0, 1}}, "ex1"); }

Code two_leaders(int q, int r) {
    std::vector<int> a(static_cast<std::size_t>(r), 0), b(static_cast<std::size_t>(r), 1);
    a.push_back(1);
    b.push_back(0);
    for (int s = 2; s < q; ++s) {
        a.push_back(s);
        b.push_back(s);
    }
    return Code::from_words(q + r - 1, q, {a, b});
}

Code cyclic(int q) {
    std::vector<std::vector<int>> words;
    for (int k = 0; k < q; ++k) {
        std::vector<int> w;
        for (int i = 0; i < q; ++i) w.push_back((i + k) % q);
        words.push_back(w);
    }
    return Code::from_words(q, q, words);
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode{};
}

}  // namespace

TEST_CASE("symbol stats") {
    auto s = symbol_stats(bytes({0, 1, 2, 3}), 4);
    CHECK(s.swt == 1);
    CHECK(s.partition == std::vector<int>{1, 1, 1, 1});

    CHECK(symbol_stats(bytes({0, 0, 1, 2, 3, 4}), 5).swt == 2);
    CHECK(code_of([] { symbol_stats(bytes({0, 5}), 5); }) == ErrorCode::invalid_codeword);
}

TEST_CASE("equitable words of length 25 over 17 symbols have partition 2^8 1^9") {
    std::mt19937_64 rng(3);
    std::vector<int> expected(8, 2);
    expected.insert(expected.end(), 9, 1);
    for (int k = 0; k < 50; ++k) {
        auto w = oracle::random_equitable_word(rng, 25, 17);
        std::vector<Symbol> u(w.begin(), w.end());
        REQUIRE(is_equitable_word(u, 17));
        CHECK(symbol_stats(u, 17).partition == expected);
    }
    CHECK(equitable_partition(25, 17) == expected);
}

TEST_CASE("code validation") {
    CHECK(code_of([] { Code::from_words(2, 2, {{0, 1}, {0, 1}}); }) == ErrorCode::invalid_codeword);
    CHECK(code_of([] { Code::from_words(2, 2, {{0, 2}}); }) == ErrorCode::invalid_codeword);
    CHECK(code_of([] { Code::from_words(2, 2, {{0}}); }) == ErrorCode::invalid_codeword);
    CHECK(code_of([] { Code(0, 2, {}); }) == ErrorCode::invalid_argument);
    CHECK(code_of([] { Code(2, 65, bytes({0, 1})); }) == ErrorCode::invalid_argument);
}

TEST_CASE("classify") {
    SUBCASE("constant partition without constant composition") {
        auto c = classify(example1());
        CHECK(c.constant_partition);
        CHECK_FALSE(c.constant_composition);
        CHECK(c.injection);
        CHECK_FALSE(c.permutation);
        CHECK(c.bounded_symbol_weight == 1);
        CHECK(symbol_stats(example1().word(0), 4).partition == std::vector<int>{1, 1, 1, 0});
    }
    SUBCASE("permutation code sets every flag") {
        auto c = classify(cyclic(5));
        CHECK(c.constant_composition);
        CHECK(c.constant_partition);
        CHECK(c.minimum_symbol_weight);
        CHECK(c.equitable);
        CHECK(c.fpa);
        CHECK(c.injection);
        CHECK(c.permutation);
    }
    SUBCASE("containments hold on random codes") {
        std::mt19937_64 rng(11);
        for (int k = 0; k < 300; ++k) {
            const int n = 2 + static_cast<int>(rng() % 7), q = 2 + static_cast<int>(rng() % 5);
            auto c = classify(oracle::random_code(rng, n, q, 6));
            if (c.equitable) CHECK((c.minimum_symbol_weight && c.constant_partition));
            CHECK(c.permutation == (c.fpa && c.injection && n == q));
        }
    }
}

TEST_CASE("minimum distance") {
    CHECK(min_distance(Code::from_words(2, 2, {{0, 0}, {1, 1}})) == 2);
    CHECK(min_distance(two_leaders(5, 2)) == 3);
    CHECK(code_of([] { min_distance(Code::from_words(2, 2, {{0, 0}})); }) == ErrorCode::undefined_distance);

    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
        const int n = 1 + static_cast<int>(rng() % 19), q = 2 + static_cast<int>(rng() % 6);
        auto code = oracle::random_code(rng, n, q, 12);
        if (code.size() < 2) continue;
        CHECK(min_distance(code) == oracle::pairwise_min_distance(code));
    }
}

TEST_CASE("capability profile") {
    SUBCASE("constant partition 1^3 0") {
        auto p = capability_profile(example1(), 1);
        CHECK(p.e_table == std::vector<int>{1, 2, 3, 3});
    }
    SUBCASE("two words with r leading repeats reach c = ceil(d/r)") {
        auto code = two_leaders(5, 2);
        auto p = capability_profile(code, min_distance(code));
        REQUIRE(p.capability.has_value());
        CHECK(*p.capability == 2);
    }
    SUBCASE("no breakdown marker") {
        auto p = capability_profile(Code::from_words(2, 3, {{0, 1}, {1, 0}}), 3);
        CHECK_FALSE(p.capability.has_value());
    }
    SUBCASE("sorted top sums agree with subset enumeration") {
        std::mt19937_64 rng(7);
        for (int k = 0; k < 200; ++k) {
            const int n = 1 + static_cast<int>(rng() % 10), q = 1 + static_cast<int>(rng() % 6);
            auto code = oracle::random_code(rng, n, q, 8);
            auto table = narrowband_profile(code);
            for (int e = 1; e <= q; ++e) CHECK(table[static_cast<std::size_t>(e - 1)] == oracle::subset_E(code, e));
        }
    }
    SUBCASE("bounds hold on random codes") {
        std::mt19937_64 rng(9);
        for (int k = 0; k < 1000; ++k) {
            const int n = 2 + static_cast<int>(rng() % 12), q = 2 + static_cast<int>(rng() % 7);
            auto code = oracle::random_code(rng, n, q, 10);
            auto table = narrowband_profile(code);
            const int r = classify(code).bounded_symbol_weight;
            CHECK(table.front() == r);
            CHECK(table.back() == n);
            for (int e = 1; e <= q; ++e) {
                CHECK(table[static_cast<std::size_t>(e - 1)] >= std::min(n, r + e - 1));
                CHECK(table[static_cast<std::size_t>(e - 1)] >= f_star(n, q, e));
                if (e > 1) CHECK(table[static_cast<std::size_t>(e - 1)] >= table[static_cast<std::size_t>(e - 2)]);
            }
            if (code.size() < 2) continue;
            const int d = min_distance(code);
            auto p = capability_profile(code, d);
            if (p.capability) {
                CHECK(*p.capability >= (d + r - 1) / r);
                CHECK(*p.capability <= std::min(d, q));
            }
        }
    }
}

TEST_CASE("f star") {
    CHECK(f_star(25, 17, 8) == 16);
    CHECK(f_star(25, 17, 9) == 17);
    CHECK(f_star(25, 17, 16) == 24);
    CHECK(f_star(25, 17, 17) == 25);
    CHECK(f_star(7, 8, 7) == 7);
    CHECK(f_star(7, 8, 8) == 7);
    for (int e = 1; e <= 9; ++e) CHECK(f_star(9, 9, e) == e);
    CHECK(code_of([] { f_star(5, 4, 0); }) == ErrorCode::out_of_range);
    CHECK(code_of([] { f_star(5, 4, 5); }) == ErrorCode::out_of_range);

    for (int n = 1; n <= 8; ++n)
        for (int q = 1; q <= 5; ++q) CHECK(f_star_table(n, q) == oracle::brute_fstar(n, q));
}

TEST_CASE("growth order") {
    std::vector<int> esw = f_star_table(25, 17);
    std::vector<int> msw;
    for (int e = 1; e <= 17; ++e) msw.push_back(std::min(25, e <= 12 ? 2 * e : 24 + (e - 12)));
    auto o = growth_compare(esw, msw);
    CHECK(o.kind == GrowthOrder::Kind::f_less);
    CHECK(o.index == 9);
    CHECK(esw[8] == 17);
    CHECK(msw[8] == 18);

    CHECK(growth_compare(esw, esw).kind == GrowthOrder::Kind::equal);
    CHECK(growth_compare(msw, esw).kind == GrowthOrder::Kind::g_less);
    CHECK(code_of([&] { growth_compare(esw, std::vector<int>{1, 2}); }) == ErrorCode::invalid_argument);

    CapabilityProfile a, b;
    a.n = 5, a.q = 4, b.n = 6, b.q = 4;
    a.e_table = b.e_table = {1, 2, 3, 4};
    CHECK(code_of([&] { growth_compare(a, b); }) == ErrorCode::invalid_argument);

    std::mt19937_64 rng(13);
    for (int k = 0; k < 500; ++k) {
        const int n = 2 + static_cast<int>(rng() % 12), q = 2 + static_cast<int>(rng() % 7);
        auto code = oracle::random_code(rng, n, q, 6);
        CHECK(growth_compare(f_star_table(n, q), narrowband_profile(code)).kind != GrowthOrder::Kind::g_less);
    }
}

TEST_CASE("equitable codes are exactly those meeting f star") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 300; ++k) {
        const int n = 2 + static_cast<int>(rng() % 12), q = 2 + static_cast<int>(rng() % 6);
        std::set<std::vector<int>> words;
        const int m = 1 + static_cast<int>(rng() % 5);
        for (int j = 0; j < m; ++j)
            words.insert(rng() % 3 ? oracle::random_equitable_word(rng, n, q) : oracle::random_word(rng, n, q));
        auto code = Code::from_words(n, q, {words.begin(), words.end()});
        CHECK((narrowband_profile(code) == f_star_table(n, q)) == classify(code).equitable);
    }
}

TEST_CASE("windowed capability") {
    auto alt = Code::from_words(5, 2, {{0, 1, 0, 1, 0}});
    CHECK(windowed_capability(alt, 1, std::vector<int>{2}) == 1);
    CHECK(code_of([&] { windowed_profile(alt, std::vector<int>{}); }) == ErrorCode::invalid_argument);

    std::mt19937_64 rng(19);
    for (int k = 0; k < 60; ++k) {
        const int n = 1 + static_cast<int>(rng() % 8), q = 1 + static_cast<int>(rng() % 5);
        auto code = oracle::random_code(rng, n, q, 10);
        std::vector<int> durations;
        const int count = 1 + static_cast<int>(rng() % 3);
        for (int j = 0; j < count; ++j) durations.push_back(1 + static_cast<int>(rng() % (2 * n)));
        auto table = windowed_profile(code, durations);
        const int longest = std::min(n, *std::max_element(durations.begin(), durations.end()));
        for (int e = 1; e <= q; ++e) {
            CHECK(table[static_cast<std::size_t>(e - 1)] == oracle::windowed_E(code, e, durations));
            CHECK(table[static_cast<std::size_t>(e - 1)] == oracle::windowed_E(code, e, {longest}));
        }
        CHECK(windowed_profile(code, std::vector<int>{n}) == narrowband_profile(code));
    }
}

TEST_CASE("code file round trip") {
    auto code = example1();
    const std::string text = format_code(code, {"target=test"});
    auto back = parse_code(text);
    CHECK(back.symbols() == code.symbols());
    CHECK(back.id() == "ex1");
    CHECK(text.find("# target=test") != std::string::npos);

    auto tmp = std::filesystem::temp_directory_path() / "symeq_roundtrip_plain.code";
    {
        std::ofstream out(tmp);
        out << "2 3 2\n0 1\n2 2\n";
    }
    auto read = read_code(tmp);
    CHECK(read.id() == "symeq_roundtrip_plain");
    CHECK(read.size() == 2);
    write_code(read, tmp);
    CHECK(read_code(tmp).symbols() == read.symbols());
    std::filesystem::remove(tmp);

    SUBCASE("parse errors name the line") {
        try {
            parse_code("2 2 2\n0 1\n1 x\n");
            FAIL("expected a parse error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::parse);
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
        CHECK(code_of([] { parse_code("2 2 3\n0 1\n1 0\n"); }) == ErrorCode::parse);
        CHECK(code_of([] { parse_code("2 2 1\n0 1 1\n"); }) == ErrorCode::parse);
        CHECK(code_of([] { parse_code("2 2 1\n0 2\n"); }) == ErrorCode::parse);
        CHECK(code_of([] { parse_code("2 2 2\n0 1\n0 1\n"); }) == ErrorCode::invalid_codeword);
        CHECK(code_of([] { read_code("/nonexistent/none.code"); }) == ErrorCode::io);
    }
}

TEST_CASE("galois fields") {
    for (int order : {2, 4, 8, 16, 25, 49}) {
        auto f = GaloisField::standard(order);
        CHECK(f.order() == order);
        std::set<int> powers;
        for (int e = 0; e < order - 1; ++e) powers.insert(f.exp(e));
        CHECK(static_cast<int>(powers.size()) == order - 1);
        for (int a = 1; a < order; ++a) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.exp(f.log(a)) == a);
            CHECK(f.add(a, f.neg(a)) == 0);
        }
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                for (int c : {1, order - 1}) CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    }
}
