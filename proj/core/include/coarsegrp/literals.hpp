#pragma once

// Text literals shared by the command line and the tests. Every parser throws
// ParseError on malformed input and DomainError on well-formed input that
// names an invalid object (e.g. a matrix that is not a homomorphism).
//
//   group     Z^2 + Z/4 + Z/12 | Z | 0
//   matrix    [[1,2],[3,4]]   (rows; column j is the image of generator j)
//   ideal     finitary | bounded | discrete | finite-rank | linear([[gen],...])
//   map       floor(1/2[, 1/3...][, offset=c]) | largest-even-below | abs |
//             hom [[..]] [-> group] | compose(map, map) | table@file.json
//   span      span{apex: group, left: matrix -> group, right: matrix -> group}
//   endo      endo{head: [[..]], tail: identity|shift(k)|zero|scale(c)|scaled-shift(c,k)}
//   periodic  periodic{m: 6, residues: [1,3], except: [+7, -1]}

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coarsegrp/bigrank.hpp"
#include "coarsegrp/cgcat.hpp"
#include "coarsegrp/coarse.hpp"
#include "coarsegrp/fgab.hpp"
#include "coarsegrp/geom.hpp"
#include "coarsegrp/quasihom.hpp"

namespace cg::literals {

fgab::FgAbGroup parse_group(std::string_view text);
intlat::IntMatrix parse_matrix(std::string_view text);
/// Empty matrices ("[]") stand for the zero map of the right shape.
fgab::Hom parse_hom(const fgab::FgAbGroup& source, const fgab::FgAbGroup& target,
                    std::string_view matrix);
coarse::GroupIdeal parse_ideal(std::string_view text, const fgab::FgAbGroup& g);
/// "a,b" with top-level comma separation (commas inside brackets are kept).
std::vector<std::string> split_top_level(std::string_view text, char sep = ',');
quasihom::QhMap parse_map(std::string_view text);
cgcat::Span parse_span(std::string_view text);
bigrank::StructuredEndo parse_endo(std::string_view text);
geom::PeriodicSet parse_periodic(std::string_view text);
std::vector<long> parse_long_list(std::string_view text);
/// "[-1,0,1]" (points of Z) or "[[1,0],[0,1]]" (points of Z^d).
std::vector<geom::Point> parse_point_set(std::string_view text);

}  // namespace cg::literals
