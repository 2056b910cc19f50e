"""Build the short/long pairing on the marked nerve of the tuple poset and
print where the literal face identity and the filtration check diverge."""

from catverify.sigmacomb import filtration_certificate, localization_report

for arities in ((1,), (1, 1)):
    cert = filtration_certificate(arities, 4)
    print(list(arities), "violations", cert.violation_counts(),
          "filtration holds:", cert.ok_for_filtration)

print("localization:", localization_report(1))
