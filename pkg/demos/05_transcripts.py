# %% [markdown]
# # Transcript markup and corpus statistics
#
# Transcribers mark a repeated word with `=`, a cut-off word with a trailing
# `-`, and the end of a restart with a lone `#`.

# %%
import io

from speechtrees.transcripts import corpus_stats, parse_transcript_line, read_tagged_file, write_tagged_file

line = "the= the mother pl- the cleaning uh d- um # I forget what you call it"
tokens = parse_transcript_line(line)
for tok in tokens:
    flags = [name for name, on in (("rep", tok.is_repetition), ("partial", tok.is_partial),
                                   ("restart end", tok.is_restart_end)) if on]
    print(f"{tok.token:10} {tok.surface!r:12} {', '.join(flags)}")

# %% [markdown]
# Gold POS annotation extends the usual tagset: `PT` for partial words, an
# `_RE` suffix for repeated words and `#` for the restart marker.

# %%
tags = "DT_RE DT NN PT DT NN UH PT UH # PRP VBP WPO PRP VBP PRP".split()
tagged = "".join(f"{tok}\t{tag}\n" for tok, tag in zip(line.split(), tags))
sentences = read_tagged_file(tagged + "\nokay\tUH\nthat\tDT\n's\tVBZ\nit\tPRP\n")
buf = io.StringIO()
write_tagged_file(sentences, buf)
print(buf.getvalue())

# %%
stats = corpus_stats(sentences)
print("# sents  # tokens  tokens/sent (std)")
print(stats.as_row())
