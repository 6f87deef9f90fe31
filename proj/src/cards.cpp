#include "zknono/cards.hpp"

namespace zknono {

std::string_view suit_name(Suit s) {
    switch (s) {
        case Suit::Club: return "CLUB";
        case Suit::Heart: return "HEART";
        case Suit::Spade: return "SPADE";
        case Suit::Diamond: return "DIAMOND";
    }
    return "?";
}

std::optional<Suit> suit_from_name(std::string_view name) {
    if (name == "CLUB") return Suit::Club;
    if (name == "HEART") return Suit::Heart;
    if (name == "SPADE") return Suit::Spade;
    if (name == "DIAMOND") return Suit::Diamond;
    return std::nullopt;
}

}  // namespace zknono
