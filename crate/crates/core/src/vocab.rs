//! Namespaces and well-known IRIs shared across the pipeline.

pub const FRED: &str = "http://www.ontologydesignpatterns.org/ont/fred/domain.owl#";
pub const PBRS: &str = "https://w3id.org/framester/pb/pbrs/";
pub const PBLR: &str = "https://w3id.org/framester/pb/pblr/";
pub const VN_ROLE: &str = "http://www.ontologydesignpatterns.org/ont/vn/abox/role/";
pub const WN30: &str = "https://w3id.org/framester/wn/wn30/instances/";
pub const DUL: &str = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#";
pub const D0: &str = "http://www.ontologydesignpatterns.org/ont/d0.owl#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

/// Prefix bindings every pipeline graph starts from.
pub const STANDARD_PREFIXES: [(&str, &str); 11] = [
    ("d0", D0),
    ("dul", DUL),
    ("fred", FRED),
    ("owl", OWL),
    ("pblr", PBLR),
    ("pbrs", PBRS),
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("vn.role", VN_ROLE),
    ("wn30", WN30),
    ("xsd", XSD),
];

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const RDFS_SUBPROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
pub const RDFS_DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
pub const RDFS_RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";

pub const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
pub const OWL_OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
pub const OWL_DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
pub const OWL_ANNOTATION_PROPERTY: &str = "http://www.w3.org/2002/07/owl#AnnotationProperty";
pub const OWL_NAMED_INDIVIDUAL: &str = "http://www.w3.org/2002/07/owl#NamedIndividual";
pub const OWL_ONTOLOGY: &str = "http://www.w3.org/2002/07/owl#Ontology";
pub const OWL_IMPORTS: &str = "http://www.w3.org/2002/07/owl#imports";
pub const OWL_EQUIVALENT_CLASS: &str = "http://www.w3.org/2002/07/owl#equivalentClass";
pub const OWL_SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";
pub const OWL_DISJOINT_WITH: &str = "http://www.w3.org/2002/07/owl#disjointWith";

pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";

pub const DUL_HAS_QUALITY: &str = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#hasQuality";
pub const DUL_ASSOCIATED_WITH: &str = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#associatedWith";
pub const DUL_PRECEDES: &str = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#precedes";

/// Namespaces whose terms come from reference vocabularies rather than being minted
/// by the pipeline or an LLM.
pub const REFERENCE_NAMESPACES: [&str; 10] = [OWL, RDF, RDFS, XSD, DUL, D0, WN30, PBRS, PBLR, VN_ROLE];

pub fn is_reference_term(iri: &str) -> bool {
    REFERENCE_NAMESPACES.iter().any(|ns| iri.starts_with(ns))
}
