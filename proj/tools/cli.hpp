#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "freedep/word.hpp"

namespace freedep::cli {

/// Generators read from a subgroup file, with the alphabet they live in.
struct SubgroupInput {
  Alphabet alphabet;
  std::vector<Word> gens;
};

/// One generator per line; '#' starts a comment; an "#alphabet: a b c"
/// header fixes the alphabet, otherwise it is the set of letters used.
/// Errors are InputError messages of the form "<source>:<line>: ...".
SubgroupInput parse_subgroup_text(std::string_view text, const std::string& source);
SubgroupInput parse_subgroup_file(const std::string& path);

/// A subgroup argument: "gens:w1,w2,..." inline, otherwise a file path.
SubgroupInput load_subgroup(const std::string& arg);

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on domain errors, 2 on usage or parse errors, 3 on internal errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freedep::cli
