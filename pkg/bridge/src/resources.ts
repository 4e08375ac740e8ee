/**
 * Bundled relevance texts: one hand-written passage per positive class
 * (used by the next-sentence and binary exporters) and one representative
 * query per class (used by the segment-similarity exporter).
 */

export const PASSAGES = {
    vaccine:
        "Vaccine is a substance used to stimulate the production of antibodies and provide immunity " +
        "against diseases. They are treated to act as an antigen without inducing the disease. When the " +
        "virulent version of an agent comes along, the immune system is prepared to respond due to the " +
        "generation of B cells (memory and plasma cells), which will generate antibodies that will bind " +
        "to pathogens and destroy them. Vaccine researchers are working on the development of a vaccine " +
        "candidate expressing the viral spike protein of SARS-CoV-2 using a messenger RNA vaccine. " +
        "Scientists are also focusing on the development of a chimpanzee adenovirus-vectored vaccine " +
        "candidate against COVID-19. In addition, scientists are also working to see if vaccines " +
        "developed for SARS coronavirus are effective against COVID-19.",
    therapeutics:
        "Therapeutics is the branch of medicine concerned with the therapeutics of disease and the " +
        "action of remedial agents. There is no specific antiviral therapy and therapeutics given by " +
        "doctors is largely supportive, consisting of supplemental oxygen and conservative fluid " +
        "administration. Drugs like Chloroquine, Hydroxychloroquine, Lopinavir, Ritonavir, Azithromycin " +
        "and Tocilizumab are being prescribed by doctors in ICU testing. The drug Remdesivir has shown " +
        "promise against other coronaviruses in animal models. Patients with respiratory failure require " +
        "intubation. Patients in shock require urgent fluid resuscitation and administration of empiric " +
        "antimicrobial therapy. Corticosteroid therapy is not recommended for viral pneumonia; however, " +
        "use may be considered for patients with refractory shock or acute respiratory distress syndrome.",
};

export const QUERIES = {
    vaccine:
        "vaccine vaccination dose antitoxin serum immunization inoculation for COVID-19 or coronavirus " +
        "related research work.",
    therapeutics:
        "Therapeutics therapeutics therapy drug antidotes cures remedies medication prophylactic " +
        "restorative panacea for COVID-19 or coronavirus related research work.",
};
