# Counts a's modulo 3; b resets to p and is blocked in r.
ts
states p q r
letters a b
trans p a q
trans q a r
trans r a p
trans p b p
trans q b p
