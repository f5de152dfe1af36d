// The textual surface syntax for rule systems, the size of a system's
// word encoding, and DOT import/export of decision artifacts.
//
// Default syntax: `(a1=0)&(a2=1)->3;` with decimal numbers, one rule per
// line on output.  The binary_word syntax replaces `&` and `->` with the
// single symbols of the word alphabet and writes every number in binary.

#ifndef RULETREE_TEXTIO_HPP
#define RULETREE_TEXTIO_HPP

#include <string>
#include <variant>

#include "ruletree/core.hpp"
#include "ruletree/trees.hpp"

namespace ruletree {

enum class Syntax { ascii_decimal, binary_word };

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line, std::size_t column)
        : std::runtime_error(message + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

RuleSystem parse_system(std::string_view text, Syntax syntax = Syntax::ascii_decimal);
std::string serialize_system(const RuleSystem& s, Syntax syntax = Syntax::ascii_decimal);

std::string serialize_rule(const Rule& r, Syntax syntax = Syntax::ascii_decimal);

// The length of the system's word over the alphabet {(,),a,=,and,arrow,0,1,;}
// with every number written in binary and a `;` closing each rule.  The
// conjunction and arrow signs count as one symbol each.
std::size_t size_of(const RuleSystem& s);

// DOT export.  Output is deterministic (nodes renumbered in depth-first
// order from the root) and carries machine-readable attributes so the
// artifact can be read back by parse_dot.
std::string export_dot(const DecisionTree& tree, const RuleSystem& s);
std::string export_dot(const DecisionGraph& g, const RuleSystem& s);
std::string export_dot(const DecisionGraphWithWriting& g, const RuleSystem& s);

using Artifact = std::variant<DecisionTree, DecisionGraph, DecisionGraphWithWriting>;

// Reads a DOT file produced by export_dot (or handwritten in the same
// subset: node statements with kind/attr/rules/rule attributes, edge
// statements with a value attribute).
Artifact parse_dot(std::string_view text);

}  // namespace ruletree

#endif  // RULETREE_TEXTIO_HPP
