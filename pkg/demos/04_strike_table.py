# %% [markdown]
# # Strike durations and private universities, 1999-2022
#
# The bundled table is kept exactly as printed. Its TOTAL row does not
# equal the sum of the strike-day column.

# %%
from strikemodel.dataset import PRINTED_TOTALS, TotalsMismatchError, bundled_csv, load_bundled, load_table1, totals

records = load_bundled()
for r in records:
    print(f"{r.period_label}  private {r.private_universities:>3}  strike days {r.strike_days:>4}")

# %%
print("row sums          ", totals(records))
print("printed TOTAL row ", PRINTED_TOTALS)
print("first 11 periods  ", totals(records[:11]))

# %%
try:
    load_table1(bundled_csv())
except TotalsMismatchError as exc:
    print("strict load:", exc)
