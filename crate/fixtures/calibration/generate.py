"""Writes the synthetic calibration graphs: a base graph and one diff per heuristic.

Every count is fixed by construction (see the tallies below), so the profile of
each file is known without running the Rust code.
"""

from pathlib import Path

HERE = Path(__file__).parent

PREFIXES = {
    "fred": "http://www.ontologydesignpatterns.org/ont/fred/domain.owl#",
    "pbrs": "https://w3id.org/framester/pb/pbrs/",
    "pblr": "https://w3id.org/framester/pb/pblr/",
    "vn.role": "http://www.ontologydesignpatterns.org/ont/vn/abox/role/",
    "wn30": "https://w3id.org/framester/wn/wn30/instances/",
    "dul": "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#",
    "d0": "http://www.ontologydesignpatterns.org/ont/d0.owl#",
    "owl": "http://www.w3.org/2002/07/owl#",
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
}

NOUNS = [
    "athlete", "uniform", "track", "stadium", "spectator", "flag", "jersey", "arm",
    "crowd", "competitor", "country", "pose", "moment", "pride", "joy", "spirit",
    "competition", "achievement", "scene", "potential", "victory", "race", "background",
    "emotion", "thrill", "level", "work", "dedication", "representation", "embodiment",
]
SUPERSENSES = ["noun_person", "noun_artifact", "noun_location"]
DUL = [
    "Person", "DesignedArtifact", "PhysicalPlace", "Agent", "PhysicalObject",
    "PhysicalBody", "Collection", "Place", "Quality", "Situation",
]
VERBS = [
    "celebrate", "wear", "win", "race", "compete", "cheer", "finish", "stretch", "beam",
    "represent", "achieve", "crowd", "pay", "inspire", "realize", "capture", "visible",
    "outstretch", "embody", "dedicate",
]
ROLES = [
    ("celebrate", "honorer"), ("celebrate", "honored"), ("wear", "wearer"), ("wear", "clothing"),
    ("win", "winner"), ("win", "contest"), ("race", "racer"), ("race", "opponent"),
    ("compete", "competitor"), ("compete", "competition"), ("cheer", "cheerer"), ("cheer", "cheered"),
    ("finish", "agent"), ("finish", "thing_finished"), ("stretch", "stretcher"),
    ("stretch", "thing_stretched"), ("beam", "beamer"), ("beam", "emotion"),
    ("represent", "representative"), ("represent", "represented"), ("achieve", "achiever"),
    ("achieve", "thing_achieved"), ("pay", "payer"),
]
D0 = ["Activity", "Event", "Characteristic", "Location"]

assert len(NOUNS) == 30 and len(VERBS) == 20 and len(ROLES) == 23 and len(DUL) == 10


def cap(word):
    return word[0].upper() + word[1:]


def header(extra=()):
    lines = [f"@prefix {label}: <{ns}> ." for label, ns in PREFIXES.items()]
    lines += [f"@prefix {label}: <{ns}> ." for label, ns in extra]
    return "\n".join(lines) + "\n\n"


def base_graph():
    axioms, structural = [], []
    # 30 typed individuals
    for noun in NOUNS:
        axioms.append(f"fred:{noun}_1 a fred:{cap(noun)} .")
        structural.append(f"fred:{cap(noun)} a owl:Class .")
        structural.append(f'fred:{noun}_1 rdfs:label "{noun}" .')
    # 30 equivalences: 30 synsets
    for noun in NOUNS:
        axioms.append(f"fred:{cap(noun)} owl:equivalentClass wn30:synset-{noun}-noun-1 .")
    # 30 supersense subclass axioms over 3 supersenses
    for i, noun in enumerate(NOUNS):
        axioms.append(f"fred:{cap(noun)} rdfs:subClassOf wn30:supersense-{SUPERSENSES[i % 3]} .")
    # 10 DUL classes, one axiom each
    for noun, dul in zip(NOUNS, DUL):
        axioms.append(f"fred:{cap(noun)} rdfs:subClassOf dul:{dul} .")
    # 20 frame occurrences: 20 pbrs classes
    for verb in VERBS:
        axioms.append(f"fred:{verb}_1 a pbrs:{verb}-01 .")
    # 4 D0 alignments of frame classes
    for verb, d0 in zip(VERBS, D0):
        axioms.append(f"pbrs:{verb}-01 rdfs:subClassOf d0:{d0} .")
    # 23 local roles
    for i, (verb, role) in enumerate(ROLES):
        axioms.append(f"fred:{verb}_1 pblr:{verb}-01.{role} fred:{NOUNS[i % 30]}_1 .")
    # 1 VerbNet role
    axioms.append("fred:celebrate_1 vn.role:Location fred:track_1 .")
    tally = 30 + 30 + 30 + 10 + 20 + 4 + 23 + 1
    # fred-only padding up to 293
    for k in range(1, 293 - tally + 1):
        axioms.append(f"fred:detail_{k} fred:partOf fred:scene_1 .")
    assert len(axioms) == 293
    structural.insert(0, "<http://example.org/xkg/base> a owl:Ontology .")
    structural.insert(1, '<http://example.org/xkg/base> rdfs:comment "Synthetic calibration base graph" .')
    return header() + "\n".join(structural + axioms) + "\n"


# name, prefix, axioms, wordnet, pb roles, pb frames, new OP, new DP
DIFF_COLUMNS = [
    ("Presuppositions", "presup", 32, 0, 0, 3, 0, 11),
    ("ConversationalImplicatures", "implicature", 36, 6, 0, 0, 14, 0),
    ("FactualImpact", "impact", 13, 5, 0, 0, 3, 0),
    ("ImageSchemas", "schema", 63, 11, 0, 0, 1, 0),
    ("MetonymicCoercion", "metonymy", 26, 0, 5, 5, 7, 0),
    ("MoralValueCoercion", "moral", 12, 0, 2, 1, 3, 0),
    ("SymbolicCoercion", "symbol", 15, 7, 0, 0, 1, 0),
    ("EventSequences", "sequence", 15, 0, 0, 0, 1, 0),
    ("CausalRelations", "causal", 16, 1, 0, 0, 1, 0),
    ("ImpliedFutureEvents", "future", 14, 0, 1, 1, 2, 0),
    ("PotentialNonEvents", "nonevent", 23, 0, 5, 4, 5, 0),
]


def diff_graph(prefix, axioms, wordnet, pb_roles, pb_frames, new_op, new_dp):
    p = prefix
    out, structural = [], []
    # each WordNet entity costs two axioms: typing of a base individual and the equivalence
    for i in range(1, wordnet + 1):
        out.append(f"fred:{NOUNS[i - 1]}_1 a {p}:Concept{i} .")
        out.append(f"{p}:Concept{i} owl:equivalentClass wn30:synset-{p}{i}-noun-1 .")
        structural.append(f'{p}:Concept{i} rdfs:label "concept {i}" .')
    # local roles reuse base predicates, so they are not new properties
    for i in range(pb_roles):
        verb, role = ROLES[i]
        out.append(f"fred:{verb}_1 pblr:{verb}-01.{role} {p}:Role{i + 1} .")
    # frame typings are shared across heuristics on purpose (cross-heuristic duplicates)
    for i in range(pb_frames):
        out.append(f"fred:{NOUNS[i]}_1 a pbrs:{VERBS[i]}-01 .")
    for i in range(1, new_op + 1):
        out.append(f"fred:{NOUNS[i - 1]}_1 {p}:op{i} {p}:Value{i} .")
        structural.append(f"{p}:op{i} a owl:ObjectProperty .")
    for i in range(1, new_dp + 1):
        out.append(f"fred:{NOUNS[i - 1]}_1 {p}:dp{i} true .")
        structural.append(f"{p}:dp{i} a owl:DatatypeProperty .")
    k = 0
    while len(out) < axioms:
        k += 1
        if new_op:
            out.append(f"fred:{NOUNS[(k + 10) % 30]}_1 {p}:op1 {p}:Extra{k} .")
        else:
            out.append(f"fred:{NOUNS[(k + 11) % 30]}_1 {p}:dp{(k - 1) % new_dp + 1} true .")
    assert len(out) == axioms, prefix
    ns = ((p, f"https://w3id.org/xkg/{p}/"),)
    return header(ns) + "\n".join(structural + out) + "\n"


def main():
    (HERE / "base-graph.ttl").write_text(base_graph())
    for name, prefix, *counts in DIFF_COLUMNS:
        (HERE / f"{name}.ttl").write_text(diff_graph(prefix, *counts))


if __name__ == "__main__":
    main()
