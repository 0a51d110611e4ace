#include "casimir/pc_series.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace casimir::pc_series {

namespace {

constexpr double pi2 = std::numbers::pi * std::numbers::pi;

// Coefficients stored as {nm2, dm2, n0, d0, n2, d2, n4, d4}. The beta table
// lists i >= j only (it is symmetric); lambda is not symmetric and is stored
// in full for i + j <= 5.

struct Entry {
    int i, j;
    ExactCoeff c;
};

constexpr Entry kBeta[] = {
    {0, 0, {0, 1, 1, 1, 0, 1, 0, 1}},
    {1, 0, {0, 1, -4, 3, 0, 1, 0, 1}},
    {2, 0, {0, 1, 9, 5, 0, 1, 0, 1}},
    {1, 1, {0, 1, 18, 5, 0, 1, 0, 1}},
    {3, 0, {0, 1, -16, 7, 32, 735, 0, 1}},
    {2, 1, {0, 1, -48, 7, 0, 1, 0, 1}},
    {4, 0, {0, 1, 25, 9, -326, 1323, 0, 1}},
    {3, 1, {0, 1, 100, 9, -326, 1323, 0, 1}},
    {2, 2, {0, 1, 50, 3, 0, 1, 0, 1}},
    {5, 0, {0, 1, -36, 11, 1220, 1617, -379, 32340}},
    {4, 1, {0, 1, -180, 11, 2440, 1617, 0, 1}},
    {3, 2, {0, 1, -360, 11, 1220, 1617, 0, 1}},
};

constexpr Entry kLambda[] = {
    {0, 0, {-20, 1, 1, 3, 0, 1, 0, 1}},
    {1, 0, {56, 3, -32, 45, 0, 1, 0, 1}},
    {0, 1, {56, 3, -14, 45, 0, 1, 0, 1}},
    {2, 0, {-398, 21, 401, 315, 0, 1, 0, 1}},
    {1, 1, {-796, 21, 454, 315, 0, 1, 0, 1}},
    {0, 2, {-398, 21, 113, 315, 0, 1, 0, 1}},
    {3, 0, {410, 21, -37, 18, 286, 6615, 0, 1}},
    {2, 1, {410, 7, -26, 7, 0, 1, 0, 1}},
    {1, 2, {410, 7, -16, 7, 0, 1, 0, 1}},
    {0, 3, {410, 21, -79, 126, 1, 6615, 0, 1}},
    {4, 0, {-69824, 3465, 35141, 10395, -28022, 99225, 0, 1}},
    {3, 1, {-279296, 3465, 84176, 10395, -2774, 14175, 0, 1}},
    {2, 2, {-139648, 1155, 742, 99, 32, 11025, 0, 1}},
    {1, 3, {-279296, 3465, 43856, 10395, -46558, 1091475, 0, 1}},
    {0, 4, {-69824, 3465, 14981, 10395, -11962, 1091475, 0, 1}},
    {5, 0, {26732, 1287, -150368, 27027, 4937399, 5675670, -1142, 63063}},
    {4, 1, {133660, 1287, -35026, 2079, 773884, 567567, 0, 1}},
    {3, 2, {267320, 1287, -548024, 27027, 26212, 51597, 0, 1}},
    {2, 3, {267320, 1287, -415724, 27027, 16826, 81081, 0, 1}},
    {1, 4, {133660, 1287, -256888, 27027, 19984, 81081, 0, 1}},
    {0, 5, {26732, 1287, -84218, 27027, 3329, 62370, 8059, 2522520}},
};

void check_order(int i, int j) {
    if (i < 0 || j < 0 || i + j > max_order)
        throw std::out_of_range("pc_series: coefficients tabulated for i + j <= 5 only");
}

void append_rational(std::ostringstream& ss, long long n, long long d, const char* suffix,
                     bool& first) {
    if (n == 0) return;
    if (!first && n > 0) ss << " + ";
    if (!first && n < 0) {
        ss << " - ";
        n = -n;
    }
    ss << n;
    if (d != 1) ss << "/" << d;
    ss << suffix;
    first = false;
}

}  // namespace

double ExactCoeff::value() const {
    return static_cast<double>(nm2) / static_cast<double>(dm2) / pi2 +
           static_cast<double>(n0) / static_cast<double>(d0) +
           static_cast<double>(n2) / static_cast<double>(d2) * pi2 +
           static_cast<double>(n4) / static_cast<double>(d4) * pi2 * pi2;
}

std::string ExactCoeff::exact_string() const {
    std::ostringstream ss;
    bool first = true;
    append_rational(ss, nm2, dm2, "/pi^2", first);
    append_rational(ss, n0, d0, "", first);
    append_rational(ss, n2, d2, " pi^2", first);
    append_rational(ss, n4, d4, " pi^4", first);
    if (first) ss << "0";
    return ss.str();
}

ExactCoeff beta(int i, int j) {
    check_order(i, j);
    if (i < j) std::swap(i, j);  // beta_{i,j} = beta_{j,i}
    for (const Entry& e : kBeta)
        if (e.i == i && e.j == j) return e.c;
    throw std::out_of_range("pc_series: missing beta entry");
}

ExactCoeff lambda(int i, int j) {
    check_order(i, j);
    for (const Entry& e : kLambda)
        if (e.i == i && e.j == j) return e.c;
    throw std::out_of_range("pc_series: missing lambda entry");
}

double pc_series_eval(Kind kind, double a1, double a2, double e, int order) {
    if (order < 0 || order > max_order)
        throw std::out_of_range("pc_series_eval: order must be in 0..5");
    double lead = 0.0, next = 0.0;
    for (int i = 0; i <= order; ++i) {
        for (int j = 0; i + j <= order; ++j) {
            const double mono = std::pow(a1, i) * std::pow(a2, j);
            double wb = 1.0, wl = 1.0;
            switch (kind) {
                case Kind::Energy:
                    break;
                case Kind::Force:
                    wb = 0.5 * (i + j + 2);
                    wl = 0.5 * (i + j + 1);
                    break;
                case Kind::Gradient:
                    wb = (i + j + 2) * (i + j + 3) / 6.0;
                    wl = (i + j + 1) * (i + j + 2) / 6.0;
                    break;
            }
            lead += wb * beta(i, j).value() * mono;
            next += wl * lambda(i, j).value() * mono;
        }
    }
    return lead + e * next;
}

}  // namespace casimir::pc_series
