#include "zknono/transcript.hpp"

#include <sstream>

namespace zknono {

std::string event_to_line(const Event& e) {
    std::ostringstream out;
    switch (e.kind) {
        case EventKind::Place:
            out << "PLACE " << e.a << ' ' << (e.b ? "UP" : "DOWN");
            break;
        case EventKind::Shuffle:
            out << "SHUFFLE "
                << (static_cast<ShuffleKind>(e.b) == ShuffleKind::Pile ? "PILE" : "CUT")
                << ' ' << e.a;
            break;
        case EventKind::Reveal:
            out << "REVEAL " << e.a << ' ' << suit_name(e.suit);
            break;
        case EventKind::Replace:
            out << "REPLACE " << e.a << ' ' << suit_name(e.suit);
            break;
        case EventKind::Remove:
            out << "REMOVE " << e.a;
            break;
        case EventKind::Rotate:
            out << "ROTATE " << e.a;
            break;
        case EventKind::Verdict:
            out << "VERDICT "
                << (static_cast<Verdict>(e.b) == Verdict::Accept ? "ACCEPT" : "REJECT");
            break;
    }
    return out.str();
}

std::string Transcript::to_text() const {
    std::string out;
    for (const Event& e : events_) {
        out += event_to_line(e);
        out += '\n';
    }
    return out;
}

}  // namespace zknono
