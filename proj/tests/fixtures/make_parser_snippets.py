import json
import os
S = [
 ("Відповідно до ст. 16 ЦК України кожна особа має право на захист.", [("civ",16,"ст. 16 ЦК України")]),
 ("Згідно зі статтею 1166 ЦК шкода відшкодовується в повному обсязі.", [("civ",1166,"статтею 1166 ЦК")]),
 ("Суд керується статтями 10-12 ЦПК України.", [("civ_proc",10,"статтями 10-12 ЦПК України"),("civ_proc",11,"статтями 10-12 ЦПК України"),("civ_proc",12,"статтями 10-12 ЦПК України")]),
 ("Положення ст. ст. 3, 4 КК України не застосовуються.", [("crim",3,"ст. ст. 3, 4 КК України"),("crim",4,"ст. ст. 3, 4 КК України")]),
 ("Порушення ч. 1 ст. 130 КУпАП встановлено.", [("admin_off",130,"ст. 130 КУпАП")]),
 ("Рішення без посилань на норми права.", []),
 ("", []),
 ("Відповідно до статті 5 Цивільного кодексу України акти не мають зворотної дії.", [("civ",5,"статті 5 Цивільного кодексу України")]),
 ("Згідно зі статтею 263 Цивільного процесуального кодексу України рішення має бути законним.", [("civ_proc",263,"статтею 263 Цивільного процесуального кодексу України")]),
 ("Колегія застосовує ст. 625 ЦК України та ст. 549 ЦК України.", [("civ",625,"ст. 625 ЦК України"),("civ",549,"ст. 549 ЦК України")]),
 ("На підставі статей 16, 203 та 215 ЦК правочин визнано недійсним.", [("civ",16,"статей 16, 203 та 215 ЦК"),("civ",203,"статей 16, 203 та 215 ЦК"),("civ",215,"статей 16, 203 та 215 ЦК")]),
 ("Позивач посилається на ст. 36 КЗпП України.", [("labour",36,"ст. 36 КЗпП України")]),
 ("Відповідно до статті 40 Кодексу законів про працю України звільнення можливе.", [("labour",40,"статті 40 Кодексу законів про працю України")]),
 ("Згідно зі ст. 193 ГК України зобов'язання виконуються належним чином.", [("comm",193,"ст. 193 ГК України")]),
 ("Господарський суд керується ст. 129 ГПК України.", [("comm_proc",129,"ст. 129 ГПК України")]),
 ("Відповідно до статті 284 Господарського процесуального кодексу України ухвалу скасовано.", [("comm_proc",284,"статті 284 Господарського процесуального кодексу України")]),
 ("Вимоги ст. 94 КПК України щодо оцінки доказів дотримано.", [("crim_proc",94,"ст. 94 КПК України")]),
 ("Відповідно до статті 185 Кримінального кодексу України дії кваліфіковано.", [("crim",185,"статті 185 Кримінального кодексу України")]),
 ("За ст. 60 СК України майно є спільною власністю.", [("family",60,"ст. 60 СК України")]),
 ("Згідно зі статтею 180 Сімейного кодексу України батьки утримують дитину.", [("family",180,"статтею 180 Сімейного кодексу України")]),
 ("Відповідно до ст. 116 ЗК України земельні ділянки передаються у власність.", [("land",116,"ст. 116 ЗК України")]),
 ("Згідно зі статтею 125 Земельного кодексу України право виникає з моменту реєстрації.", [("land",125,"статтею 125 Земельного кодексу України")]),
 ("Податкове зобов'язання визначено за ст. 54 ПК України.", [("tax",54,"ст. 54 ПК України")]),
 ("Відповідно до статті 56 Податкового кодексу України рішення оскаржено.", [("tax",56,"статті 56 Податкового кодексу України")]),
 ("Згідно зі ст. 64 ЖК УРСР члени сім'ї мають рівні права.", [("housing",64,"ст. 64 ЖК УРСР")]),
 ("Відповідно до статті 71 Житлового кодексу Української РСР житло зберігається.", [("housing",71,"статті 71 Житлового кодексу Української РСР")]),
 ("Адміністративний суд застосовує ст. 2 КАС України.", [("admin_proc",2,"ст. 2 КАС України")]),
 ("Згідно зі статтею 77 Кодексу адміністративного судочинства України обов'язок доказування покладено на відповідача.", [("admin_proc",77,"статтею 77 Кодексу адміністративного судочинства України")]),
 ("Відповідно до статті 247 Кодексу України про адміністративні правопорушення провадження закрито.", [("admin_off",247,"статті 247 Кодексу України про адміністративні правопорушення")]),
 ("Права гарантовано ст. 55 Конституції України.", []),
 ("Відповідно до Закону України від 01.06.2010 року № 2297-VI обробку даних врегульовано.", []),
 ("Постанова у справі № 607/8356/19 набрала законної сили.", []),
 ("Згідно зі ст. 12 Закону України «Про оренду землі» договір укладено.", []),
 ("Застосуванню підлягають ст.ст. 526, 530 ЦК України.", [("civ",526,"ст.ст. 526, 530 ЦК України"),("civ",530,"ст.ст. 526, 530 ЦК України")]),
 ("Суд врахував ст.1048 ЦК України щодо процентів.", [("civ",1048,"ст.1048 ЦК України")]),
 ("Норми статей 256–267 ЦК України про позовну давність застосовано.", [("civ",a,"статей 256–267 ЦК України") for a in range(256,268)]),
 ("Посилання на ст. 3-9000 ЦК є помилкою розпізнавання.", [("civ",3,"ст. 3-9000 ЦК")]),
 ("Посилання на ст. 12-10 ЦПК зроблено у зворотному порядку.", [("civ_proc",12,"ст. 12-10 ЦПК")]),
 ("Повтор ст. 5, 5 ЦК не змінює суті.", [("civ",5,"ст. 5, 5 ЦК")]),
 ("За ст. 16 ЦК позов задоволено, а ст. 16 ЦК застосовано повторно.", [("civ",16,"ст. 16 ЦК"),("civ",16,"ст. 16 ЦК","next")]),
 ("СТ. 22 ЦК УКРАЇНИ передбачає відшкодування збитків.", [("civ",22,"СТ. 22 ЦК УКРАЇНИ")]),
 ("Відповідно до наст. 5 ЦК нічого не відбувається.", []),
 ("Термін ст. 7 ЦКУ не є назвою кодексу.", []),
 ("Згідно з п. 2 ч. 1 ст. 3 ЦК України свобода договору гарантується.", [("civ",3,"ст. 3 ЦК України")]),
 ("Вимоги статей 12 і 81 ЦПК України щодо доказування не виконано.", [("civ_proc",12,"статей 12 і 81 ЦПК України"),("civ_proc",81,"статей 12 і 81 ЦПК України")]),
 ("Відповідно до ст. 0 ЦК номер статті некоректний.", []),
 ("Застосовано ст. 1, 2-4 та 9 КК України.", [("crim",1,"ст. 1, 2-4 та 9 КК України"),("crim",2,"ст. 1, 2-4 та 9 КК України"),("crim",3,"ст. 1, 2-4 та 9 КК України"),("crim",4,"ст. 1, 2-4 та 9 КК України"),("crim",9,"ст. 1, 2-4 та 9 КК України")]),
 ("Згідно з ч. 2 статті 1187 ЦК України володілець джерела небезпеки відповідає за шкоду, а стаття 1167 ЦК України визначає загальні підстави.", [("civ",1187,"статті 1187 ЦК України"),("civ",1167,"стаття 1167 ЦК України")]),
 ("Суд першої інстанції, посилаючись на ст. 263 ЦПК, ст. 16 ЦК та ст. 36 КЗпП, ухвалив рішення.", [("civ_proc",263,"ст. 263 ЦПК"),("civ",16,"ст. 16 ЦК"),("labour",36,"ст. 36 КЗпП")]),
 ("Строк визначено ст. 7 проекту закону, а не ст. 8 ГК.", [("comm",8,"ст. 8 ГК")]),
]
assert len(S) == 50, len(S)
out = []
for i, (text, cites) in enumerate(S):
    b = text.encode()
    masked = b
    recs = []
    cursor = 0
    spans = []
    prev = None
    for entry in cites:
        codex, art, span = entry[:3]
        sb = span.encode()
        if prev is not None and prev[0] == sb and len(entry) == 3:
            start = prev[1]
        else:
            start = b.find(sb, cursor)
            assert start >= 0, (i, span)
            cursor = start + len(sb)
            spans.append((start, start + len(sb)))
        prev = (sb, start)
        recs.append({"codex": codex, "article": art, "start": start, "end": start + len(sb), "span": span})
    m = b""
    pos = 0
    for s, e in spans:
        m += b[pos:s] + b" "
        pos = e
    m += b[pos:]
    out.append(json.dumps({"id": "p%02d" % (i + 1), "text": text, "citations": recs, "masked": m.decode()}, ensure_ascii=False))
open(os.path.join(os.path.dirname(os.path.abspath(__file__)), "parser_snippets.jsonl"), "w", encoding="utf-8").write("\n".join(out) + "\n")
